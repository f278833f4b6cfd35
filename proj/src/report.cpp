#include "cff/io/report.hpp"

namespace cff::io {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const FrameBounds& b) {
  Json j;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["classification"] = to_string(b.classification);
  j["selfadjoint_defect"] = b.selfadjoint_defect;
  return j;
}

Json to_json(const EigensumIdentity& id) {
  Json j;
  j["lhs"] = complex_to_json(id.lhs);
  j["rhs"] = complex_to_json(id.rhs);
  j["holds"] = id.holds;
  j["parseval_gap"] = id.parseval_gap;
  return j;
}

Json to_json(const FusionBounds& fb) {
  Json j = to_json(fb.bounds);
  j["rayleigh_samples"] = fb.rayleigh_samples;
  j["rayleigh_violations"] = fb.rayleigh_violations;
  return j;
}

Json to_json(const SynthesisCharacterization& sc) {
  Json j;
  j["surjective"] = sc.surjective;
  j["norm"] = sc.norm;
  j["upper_gap"] = sc.upper_gap;
  j["pinv_lower"] = sc.pinv_lower;
  j["consistent"] = sc.consistent;
  return j;
}

Json to_json(const ErasureReport& er) {
  Json j;
  Json erased = Json::array();
  for (std::size_t i : er.erased) erased.push_back(i + 1);
  j["erased"] = std::move(erased);
  j["alpha"] = er.alpha;
  j["lower"] = er.lower;
  j["upper"] = er.upper;
  j["case"] = to_string(er.kase);
  j["predicted_lower"] =
      er.predicted_lower ? Json(*er.predicted_lower) : Json(nullptr);
  j["actual_bounds"] =
      er.actual_bounds ? to_json(*er.actual_bounds) : Json(nullptr);
  j["intersection_dim"] = er.intersection_dim;
  j["kernel_check"] = er.kernel_check;
  j["theorem_holds"] = er.theorem_holds;
  return j;
}

Json to_json(const E1Report& er) {
  Json j;
  j["per_index_norm"] = er.per_index_norm;
  j["e1_exact"] = er.e1_exact;
  j["e1_nominal"] = er.e1_nominal;
  j["optimal"] = er.optimal;
  j["optimality_residuals"] = er.optimality_residuals;
  return j;
}

Json to_json(const TraceClassReport& tc) {
  Json j;
  j["trace_norm_phi"] = tc.trace_norm_phi;
  j["bound"] = tc.bound;
  j["holds"] = tc.holds;
  j["bound_adjusted"] = tc.bound_adjusted;
  j["holds_adjusted"] = tc.holds_adjusted;
  return j;
}

Json to_json(const ApproxReport& ar) {
  Json j;
  j["gamma"] = ar.gamma;
  j["a1"] = ar.a1;
  j["a2"] = ar.a2;
  j["a2_full"] = ar.a2_full;
  j["a1_block"] = ar.a1_block;
  j["a2_block"] = ar.a2_block;
  j["applicable"] = ar.applicable;
  auto predicted = [](const std::optional<PredictedBounds>& p) {
    if (!p) return Json(nullptr);
    Json out;
    out["lower"] = p->lower;
    out["upper"] = p->upper;
    return out;
  };
  j["predicted_w"] = predicted(ar.predicted_w);
  j["predicted_z"] = predicted(ar.predicted_z);
  j["actual_w"] = to_json(ar.actual_w);
  j["actual_z"] = to_json(ar.actual_z);
  j["holds"] = ar.holds;
  j["holds_conservative"] = ar.holds_conservative;
  j["dual_defect"] = ar.dual_defect;
  j["dual_ok"] = ar.dual_ok;
  return j;
}

Json input_summary(const LoadedSystem& in) {
  Json j;
  j["path"] = in.path;
  j["digest"] = in.digest;
  j["dimension"] = in.dimension();
  j["field"] = in.field;
  j["members"] = in.member_count();
  return j;
}

Json envelope(const std::string& command, const std::vector<const LoadedSystem*>& inputs,
              double tolerance, long long seed, int samples) {
  Json j;
  j["schema"] = "cff-report/1";
  j["command"] = command;
  Json ins = Json::array();
  for (const LoadedSystem* in : inputs) ins.push_back(input_summary(*in));
  j["inputs"] = std::move(ins);
  j["tolerance"] = tolerance;
  j["seed"] = seed;
  j["samples"] = samples;
  return j;
}

std::string render(const Json& report, bool pretty) {
  return (pretty ? report.dump(2) : report.dump()) + "\n";
}

}  // namespace cff::io
