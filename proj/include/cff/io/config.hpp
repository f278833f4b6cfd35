#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "cff/fusion_frames.hpp"

namespace cff::io {

using Json = nlohmann::ordered_json;

// A config file together with the validated system it describes.
struct LoadedSystem {
  std::string path;
  std::string digest;  // fnv1a64 over the raw file bytes
  std::string field;   // "real" or "complex"
  Json raw;
  std::variant<ControlledFusionSystem<Real>, ControlledFusionSystem<Complex>> system;

  Eigen::Index dimension() const;
  std::size_t member_count() const;
  bool all_positive() const;
};

std::string fnv1a64(const std::string& bytes);
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Validates the schema: dimension, field, C, Cprime (literal or one of
// "same" / "inverse-adjoint" / "identity"), subspaces as {basis, weight}.
// Complex entries are [re, im] pairs; real configs use bare numbers. An
// optional "expected" block is carried along untouched.
LoadedSystem parse_system(const std::string& text, const std::string& label);
LoadedSystem load_system(const std::string& path);

// Inverse of parse_system up to the keyword forms: Cprime is always written
// out as a literal. Orthonormal bases are emitted verbatim, so a reload
// reproduces every matrix bit for bit.
Json system_to_config(const ControlledFusionSystem<Real>& sys);
Json system_to_config(const ControlledFusionSystem<Complex>& sys);

}  // namespace cff::io
