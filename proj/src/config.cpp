#include "cff/io/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>

#include "cff/errors.hpp"
#include "cff/vector_frames.hpp"

namespace cff::io {

namespace {

double require_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

Real parse_entry(const Json& j, const std::string& where, Real*) {
  return require_number(j, where);
}

Complex parse_entry(const Json& j, const std::string& where, Complex*) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(require_number(j[0], where + "[0]"),
                   require_number(j[1], where + "[1]"));
  throw ValidationError(where + ": expected a number or [re, im]");
}

// Row-major matrix literal, shape checked against rows x cols.
template <typename S>
Matrix<S> parse_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols,
                       const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw ValidationError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix<S> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ValidationError(row_where + ": expected " + std::to_string(cols) +
                            " entries");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = parse_entry(row[static_cast<std::size_t>(c)],
                            row_where + "[" + std::to_string(c) + "]",
                            static_cast<S*>(nullptr));
  }
  return m;
}

// Basis literal: a list of columns, each of length n.
template <typename S>
Matrix<S> parse_basis(const Json& j, Eigen::Index n, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ValidationError(where + ": expected a non-empty list of columns");
  Matrix<S> m(n, static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    const Json& col = j[c];
    const std::string col_where = where + "[" + std::to_string(c) + "]";
    if (!col.is_array() || static_cast<Eigen::Index>(col.size()) != n)
      throw ValidationError(col_where + ": expected " + std::to_string(n) +
                            " entries");
    for (Eigen::Index r = 0; r < n; ++r)
      m(r, static_cast<Eigen::Index>(c)) =
          parse_entry(col[static_cast<std::size_t>(r)],
                      col_where + "[" + std::to_string(r) + "]",
                      static_cast<S*>(nullptr));
  }
  return m;
}

const Json& require_field(const Json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end())
    throw ValidationError(std::string("missing field '") + name + "'");
  return *it;
}

template <typename S>
ControlledFusionSystem<S> build_from(const Json& doc, Eigen::Index n) {
  const Matrix<S> c = parse_matrix<S>(require_field(doc, "C"), n, n, "C");

  Matrix<S> cprime;
  const Json& cp = require_field(doc, "Cprime");
  if (cp.is_string()) {
    const std::string keyword = cp.get<std::string>();
    if (keyword == "same")
      cprime = c;
    else if (keyword == "inverse-adjoint")
      cprime = inverse_adjoint<S>(c);
    else if (keyword == "identity")
      cprime = Matrix<S>::Identity(n, n);
    else
      throw ValidationError(
          "Cprime: unknown keyword '" + keyword +
          "' (expected \"same\", \"inverse-adjoint\", or \"identity\")");
  } else {
    cprime = parse_matrix<S>(cp, n, n, "Cprime");
  }

  const Json& subspaces = require_field(doc, "subspaces");
  if (!subspaces.is_array() || subspaces.empty())
    throw ValidationError("subspaces: expected a non-empty array");
  std::vector<WeightedSubspace<S>> members;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    const Json& entry = subspaces[i];
    const std::string where = "subspaces[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ValidationError(where + ": expected an object");
    const Matrix<S> basis =
        parse_basis<S>(require_field(entry, "basis"), n, where + ".basis");
    const double weight =
        require_number(require_field(entry, "weight"), where + ".weight");
    members.push_back({Subspace<S>::from_columns(basis), weight});
  }

  return build_system<S>(make_controlled_pair<S>(c, cprime), std::move(members));
}

}  // namespace

Eigen::Index LoadedSystem::dimension() const {
  return std::visit([](const auto& sys) { return sys.dim; }, system);
}

std::size_t LoadedSystem::member_count() const {
  return std::visit([](const auto& sys) { return sys.size(); }, system);
}

bool LoadedSystem::all_positive() const {
  return std::visit([](const auto& sys) { return sys.all_positive(); }, system);
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[hash & 0xf];
    hash >>= 4;
  }
  return "fnv1a64:" + hex;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError(path + ": cannot open for writing");
  out << text;
  if (!out) throw ValidationError(path + ": write failed");
}

LoadedSystem parse_system(const std::string& text, const std::string& label) {
  LoadedSystem loaded;
  loaded.path = label;
  loaded.digest = fnv1a64(text);
  try {
    loaded.raw = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(label + ": " + e.what());
  }
  if (!loaded.raw.is_object())
    throw ValidationError(label + ": top level must be an object");

  try {
    const Json& dim_field = require_field(loaded.raw, "dimension");
    if (!dim_field.is_number_integer() || dim_field.get<std::int64_t>() < 1)
      throw ValidationError("dimension: expected a positive integer");
    const Eigen::Index n = dim_field.get<Eigen::Index>();

    const Json& field = require_field(loaded.raw, "field");
    if (!field.is_string())
      throw ValidationError("field: expected \"real\" or \"complex\"");
    loaded.field = field.get<std::string>();

    if (loaded.field == "real")
      loaded.system = build_from<Real>(loaded.raw, n);
    else if (loaded.field == "complex")
      loaded.system = build_from<Complex>(loaded.raw, n);
    else
      throw ValidationError("field: expected \"real\" or \"complex\"");
  } catch (const ValidationError&) {
    throw;
  } catch (const ZeroSubspace& e) {
    throw ValidationError(e.what());
  } catch (const NotInvertible& e) {
    throw ValidationError(e.what());
  } catch (const DimensionMismatch& e) {
    throw ValidationError(e.what());
  }
  return loaded;
}

LoadedSystem load_system(const std::string& path) {
  return parse_system(read_text(path), path);
}

namespace {

Json entry_to_json(Real x) { return Json(x); }

Json entry_to_json(const Complex& x) { return Json::array({x.real(), x.imag()}); }

template <typename S>
Json matrix_rows(const Matrix<S>& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(entry_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename S>
Json matrix_columns(const Matrix<S>& m) {
  Json cols = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Json col = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) col.push_back(entry_to_json(m(r, c)));
    cols.push_back(std::move(col));
  }
  return cols;
}

template <typename S>
Json config_of(const ControlledFusionSystem<S>& sys, const char* field) {
  Json doc;
  doc["dimension"] = sys.dim;
  doc["field"] = field;
  doc["C"] = matrix_rows<S>(sys.pair.c);
  doc["Cprime"] = matrix_rows<S>(sys.pair.cprime);
  Json subspaces = Json::array();
  for (const WeightedSubspace<S>& m : sys.members) {
    Json entry;
    entry["basis"] = matrix_columns<S>(m.subspace.basis);
    entry["weight"] = m.weight;
    subspaces.push_back(std::move(entry));
  }
  doc["subspaces"] = std::move(subspaces);
  return doc;
}

}  // namespace

Json system_to_config(const ControlledFusionSystem<Real>& sys) {
  return config_of<Real>(sys, "real");
}

Json system_to_config(const ControlledFusionSystem<Complex>& sys) {
  return config_of<Complex>(sys, "complex");
}

}  // namespace cff::io
