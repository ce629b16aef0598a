#include "swlab/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace swlab {

using nlohmann::json;

json to_json(const ExponentConfig& cfg) {
    return json{{"n", cfg.n},     {"lambda", cfg.lambda}, {"alpha", cfg.alpha},
                {"beta", cfg.beta}, {"p", cfg.p},         {"r", cfg.r},
                {"q", cfg.q}};
}

json to_json(const AdmissibilityReport& rep) {
    return json{{"valid", rep.valid},
                {"violations", rep.violations},
                {"attainment_note", rep.attainment_note}};
}

json to_json(const HardyConstants& h) {
    return json{{"c1", h.c1}, {"c2", h.c2}, {"c3", h.c3}, {"c4", h.c4},
                {"e1", h.e1}, {"e2", h.e2}, {"e3", h.e3}, {"e4", h.e4}};
}

json to_json(const BoundsReport& rep) {
    return json{{"d1", rep.d1},
                {"d2", rep.d2},
                {"d3", rep.d3},
                {"d3_surrogate", rep.d3_surrogate},
                {"hls_upper", rep.hls_upper},
                {"lower", rep.lower},
                {"upper", rep.upper},
                {"stated_lower", rep.stated_lower},
                {"stated_upper", rep.stated_upper},
                {"attainment_note", rep.attainment_note}};
}

json to_json(const McResult& rep) {
    return json{{"estimate", rep.estimate},
                {"stderr", rep.stderr_est},
                {"n_samples", rep.n_samples},
                {"divergence_warning", rep.divergence_warning}};
}

json to_json(const PowerIterationResult& rep) {
    json trace = json::array();
    for (const auto& row : rep.trace)
        trace.push_back(json{{"iter", row.iter},
                             {"n_estimate", row.n_estimate},
                             {"rel_change", row.rel_change},
                             {"centroid_t", row.centroid_t},
                             {"mass_fraction", row.mass_fraction}});
    return json{{"n_estimate", rep.n_estimate},
                {"iterations", rep.iterations},
                {"converged", rep.converged},
                {"warnings", rep.warnings},
                {"trace", std::move(trace)}};
}

json to_json(const ELPairResult& rep) {
    return json{{"residual_u", rep.residual_u},
                {"residual_v", rep.residual_v},
                {"iterations", rep.iterations},
                {"converged", rep.converged},
                {"rescaled", rep.rescaled},
                {"warnings", rep.warnings}};
}

json to_json(const BubbleFit& rep) {
    return json{{"amplitude", rep.amplitude},
                {"d", rep.d},
                {"y0", {rep.y0[0], rep.y0[1]}},
                {"exponent", rep.exponent},
                {"rel_residual", rep.rel_residual},
                {"converged", rep.converged}};
}

json to_json(const KelvinReport& rep) {
    return json{{"half_norm_f", rep.half_norm_f},
                {"ball_norm_f", rep.ball_norm_f},
                {"half_norm_g", rep.half_norm_g},
                {"ball_norm_g", rep.ball_norm_g},
                {"half_functional", rep.half_functional},
                {"ball_functional", rep.ball_functional},
                {"norm_mismatch_f", rep.norm_mismatch_f},
                {"norm_mismatch_g", rep.norm_mismatch_g},
                {"functional_mismatch", rep.functional_mismatch},
                {"rel_mismatch", rep.rel_mismatch},
                {"p_alpha", rep.p_alpha},
                {"r_beta", rep.r_beta},
                {"mu1", rep.mu1},
                {"mu2", rep.mu2}};
}

json to_json(const ScalingReport& rep) {
    return json{{"ratio_base", rep.ratio_base},
                {"ratio_scaled", rep.ratio_scaled},
                {"rel_mismatch", rep.rel_mismatch}};
}

json to_json(const HyperbolicReport& rep) {
    return json{{"euclidean_sum", rep.euclidean_sum},
                {"hyperbolic_sum", rep.hyperbolic_sum},
                {"rel_mismatch", rep.rel_mismatch},
                {"alpha_forced", rep.alpha_forced},
                {"beta_forced", rep.beta_forced}};
}

json to_json(const RepresentationReport& rep) {
    json probes = json::array();
    for (const auto& p : rep.probes)
        probes.push_back(json{{"x", {p.x.x[0], p.x.x[1], p.x.t}},
                              {"exact", p.exact},
                              {"reconstructed", p.reconstructed},
                              {"abs_error", p.abs_error},
                              {"rel_error", p.rel_error}});
    return json{{"probes", std::move(probes)},
                {"max_rel_error", rep.max_rel_error},
                {"c_dim", rep.c_dim}};
}

json to_json(const WsReport& rep) {
    return json{{"p_star", rep.p_star},
                {"lhs", rep.lhs},
                {"rhs", rep.rhs},
                {"ratio", rep.ratio},
                {"certified_bound", rep.certified_bound},
                {"windows_ok", rep.windows_ok}};
}

json make_report(const std::string& kind, json payload) {
    return json{{"schema_version", kReportSchemaVersion},
                {"kind", kind},
                {"payload", std::move(payload)}};
}

void write_report(const json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report: cannot open " + path);
    out << report.dump(2) << '\n';
    if (!out) throw std::runtime_error("write_report: write failed for " + path);
}

void write_metadata_sidecar(const std::string& path) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    const json meta{{"generated_at", buf}};
    std::ofstream out(path + ".meta.json");
    if (!out)
        throw std::runtime_error("write_metadata_sidecar: cannot open " + path);
    out << meta.dump(2) << '\n';
}

}  // namespace swlab
