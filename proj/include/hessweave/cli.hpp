#pragma once

#include "io_json.hpp"
#include "patchwork.hpp"
#include "svg.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace hessweave {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,        // bad flags, bad input files, precondition violations
    kExitInfeasible = 3,   // height LP infeasible (with edge certificate on stderr)
    kExitVerifyFail = 4,   // a verification stage failed; report still written
};

struct RunConfig {
    std::string command;  // hessian | construct | verify | count
    std::string input;    // polynomial JSON path (hessian, count)
    int degree = 4;
    LayoutMode mode = LayoutMode::Literal;
    std::optional<Rational> t_override;
    int resolution = 512;
    std::optional<Rational> window_k;
    std::string out_dir;  // empty = current directory
    unsigned long seed = 0;
    bool svg = false;
};

namespace detail {

inline std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::path dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
    return dir / name;
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json load_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read " + path);
    return Json::parse(f);
}

}  // namespace detail

inline int cmd_hessian(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        Json j = detail::load_json(cfg.input);
        if (is_param_poly_json(j))
            out << detail::dump(poly_to_json(hessian(parampoly_from_json(j))));
        else
            out << detail::dump(poly_to_json(hessian(bipoly_from_json(j))));
        return kExitOk;
    } catch (const std::exception& e) {
        err << "hessian: " << e.what() << "\n";
        return kExitUsage;
    }
}

inline int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.degree < 4) {
        err << "construct: need --degree >= 4\n";
        return kExitUsage;
    }
    try {
        Layout layout = complete_layout(paper_layout(cfg.degree, cfg.mode));
        Json summary = {{"schema", "hessweave/1"},
                        {"command", "construct"},
                        {"d", cfg.degree},
                        {"mode", cfg.mode == LayoutMode::Literal ? "literal" : "simplex"},
                        {"pieces", layout.pieces.size()},
                        {"non_filler", predicted_ovals(layout)}};
        detail::write_file(detail::out_path(cfg, "layout.json"),
                           detail::dump(layout_to_json(layout, cfg.mode)));
        if (!layout.pieces.empty()) {
            Lifting v = solve_heights(layout);
            ParamPoly q = assemble(layout, v);
            auto [lift, sub] = lower_subdivision(q);
            detail::write_file(detail::out_path(cfg, "q_t.json"), detail::dump(poly_to_json(q)));
            detail::write_file(detail::out_path(cfg, "subdivision.json"),
                               detail::dump(subdivision_to_json(lift, sub)));
            detail::write_file(detail::out_path(cfg, "subdivision.svg"), subdivision_svg(sub));
            summary["total_degree"] = total_degree(specialize_t(q, Rational(1)));
        } else {
            summary["note"] = "layout empty in this mode";
        }
        out << detail::dump(summary);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "construct: " << e.what() << "\n";
        return std::string(e.what()).find("infeasible") != std::string::npos ? kExitInfeasible
                                                                             : kExitUsage;
    }
}

inline int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        Json j = detail::load_json(cfg.input);
        BiPoly f;
        if (is_param_poly_json(j)) {
            if (!cfg.t_override)
                throw std::invalid_argument("input has a t variable; pass --t num/den");
            f = specialize_t(parampoly_from_json(j), *cfg.t_override);
        } else {
            f = bipoly_from_json(j);
        }
        const Rational K = cfg.window_k.value_or(Rational(8));
        ComponentCensus cen = count_components(f, K, cfg.resolution, true);
        out << detail::dump(census_to_json(cen));
        if (cfg.svg) detail::write_file(detail::out_path(cfg, "curve.svg"), curve_svg(cen));
        return kExitOk;
    } catch (const std::exception& e) {
        err << "count: " << e.what() << "\n";
        return kExitUsage;
    }
}

namespace detail {

struct StageResult {
    Json record;
    bool pass = true;
};

// Randomized exactness laws for the hessian operator, seeded and deterministic.
inline StageResult stage_hessian_laws(unsigned long seed) {
    std::uint64_t s = seed * 2654435761ull + 88172645463325252ull;
    auto next = [&s]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    auto small = [&](long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    int checked = 0, failed = 0;
    for (int rep = 0; rep < 50; ++rep) {
        BiPoly q;
        for (int terms = 0; terms < 6; ++terms)
            q.add_term({static_cast<int>(small(0, 4)), static_cast<int>(small(0, 4))},
                       Rational(small(-9, 9), small(1, 7)));
        Rational a(small(-9, 9)), b(small(-9, 9)), c(small(-9, 9)), lam(small(-5, 5));
        BiPoly affine = q;
        affine.add_term({1, 0}, a);
        affine.add_term({0, 1}, b);
        affine.add_term({0, 0}, c);
        ++checked;
        if (!(hessian(affine) == hessian(q))) ++failed;
        ++checked;
        BiPoly lq;
        for (const auto& [e, v] : q.terms) lq.add_term(e, lam * v);
        if (!(hessian(lq) == hessian(q) * BiPoly::monomial(0, 0, lam * lam))) ++failed;
    }
    StageResult r;
    r.pass = failed == 0;
    r.record = {{"stage", "hessian_laws"}, {"checked", checked}, {"failed", failed},
                {"pass", r.pass}};
    return r;
}

inline StageResult stage_lemma_empty(int n) {
    int checked = 0, failed = 0;
    for (EmptyFamily fam : {EmptyFamily::OnePlusY, EmptyFamily::XPlusY, EmptyFamily::XPlusY2,
                            EmptyFamily::OnePlusX})
        for (int i = 2; i <= 6; ++i)
            for (int j = 2; j <= 6; ++j) {
                ++checked;
                if (!check_empty_piece(i, j, fam, n)) ++failed;
            }
    StageResult r;
    r.pass = failed == 0;
    r.record = {{"stage", "lemma_empty"}, {"checked", checked}, {"failed", failed},
                {"pass", r.pass}};
    return r;
}

inline StageResult stage_lemma_oval(int n) {
    int checked = 0, failed = 0;
    for (OvalFamily fam :
         {OvalFamily::XPlusYPlusY2, OvalFamily::XYPlusXPlusY2, OvalFamily::OnePlusXPlusY})
        for (int i = 2; i <= 5; ++i)
            for (int j = 2; j <= 5; ++j) {
                ++checked;
                if (!check_oval_piece(i, j, fam, n)) ++failed;
            }
    StageResult r;
    r.pass = failed == 0;
    r.record = {{"stage", "lemma_oval"}, {"checked", checked}, {"failed", failed},
                {"pass", r.pass}};
    return r;
}

}  // namespace detail

// The full pipeline at one degree: lemma sweeps, construct, exact gluing,
// t selection, census against the predicted and paper counts, smoothness.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.degree < 4) {
        err << "verify: need --degree >= 4\n";
        return kExitUsage;
    }
    const bool literal = cfg.mode == LayoutMode::Literal;
    Json report = {{"schema", "hessweave/1"},
                   {"command", "verify"},
                   {"d", cfg.degree},
                   {"mode", literal ? "literal" : "simplex"},
                   {"resolution", cfg.resolution},
                   {"seed", cfg.seed}};
    Json stages = Json::array();
    bool all_pass = true;
    auto push = [&](detail::StageResult r) {
        stages.push_back(std::move(r.record));
        all_pass = all_pass && r.pass;
        return r.pass;
    };

    int exit_code = kExitOk;
    try {
        push(detail::stage_hessian_laws(cfg.seed));
        push(detail::stage_lemma_empty(std::max(cfg.resolution / 2, 256)));
        push(detail::stage_lemma_oval(std::max(cfg.resolution, 256)));

        Layout layout = complete_layout(paper_layout(cfg.degree, cfg.mode));
        const int predicted = predicted_ovals(layout);
        const int paper_bound = (cfg.degree - 2) * (cfg.degree - 2);
        {
            detail::StageResult r;
            r.pass = literal ? predicted == 2 * (cfg.degree - 3) * (cfg.degree - 3) +
                                                (cfg.degree - 2)
                             : true;
            r.record = {{"stage", "construct"},
                        {"pieces", layout.pieces.size()},
                        {"non_filler", predicted},
                        {"pass", r.pass}};
            push(std::move(r));
        }
        if (layout.pieces.empty()) {
            report["stages"] = std::move(stages);
            report["note"] = "layout empty; downstream stages skipped";
            report["overall_pass"] = all_pass;
        } else {
            Lifting v = solve_heights(layout);
            ParamPoly q = assemble(layout, v);
            const int measured_degree = total_degree(specialize_t(q, Rational(1)));

            GluingReport glue = verify_hessian_gluing(q);
            {
                detail::StageResult r;
                r.pass = glue.overall_pass;
                int eligible = 0;
                for (const auto& c : glue.cells) eligible += c.eligible ? 1 : 0;
                r.record = {{"stage", "gluing"},
                            {"cells", glue.cells.size()},
                            {"eligible", eligible},
                            {"pass", r.pass}};
                push(std::move(r));
            }

            TopologySettings ts;
            ts.base_resolution = cfg.resolution;
            if (cfg.window_k) ts.window_margin = *cfg.window_k;
            Rational tstar;
            ComponentCensus census;
            if (cfg.t_override) {
                tstar = *cfg.t_override;
                BiPoly h = specialize_t(hessian(q), tstar);
                auto [lift, sub] = lower_subdivision(q);
                Rational bits = -Rational(ceil_log2(tstar));  // octaves of 1/t
                if (bits < 1) bits = 1;
                Rational K = ts.window_margin + detail::max_fold_slope(lift, sub) * bits;
                census = count_components(h, K, cfg.resolution, true);
            } else {
                std::tie(tstar, census) = select_t(q, predicted, ts);
            }
            {
                detail::StageResult r;
                r.pass = literal ? census.stable && census.compact_in_R2 == predicted &&
                                       census.compact_in_R2 >= paper_bound
                                 : true;
                r.record = {{"stage", "census"},
                            {"t", to_fraction_string(tstar)},
                            {"census", census_to_json(census)},
                            {"measured_count", census.compact_in_R2},
                            {"predicted_count", predicted},
                            {"paper_bound", paper_bound},
                            {"measured_total_degree", measured_degree},
                            {"pass", r.pass}};
                push(std::move(r));
            }
            {
                BiPoly h = specialize_t(hessian(q), tstar);
                SmoothnessReport sm = smoothness_spotcheck(h, census, 16);
                detail::StageResult r;
                r.pass = sm.all_pass;
                r.record = {{"stage", "smoothness"},
                            {"report", smoothness_to_json(sm)},
                            {"pass", r.pass}};
                push(std::move(r));
            }
            report["stages"] = std::move(stages);
            report["overall_pass"] = all_pass;
            if (cfg.svg) {
                auto [lift, sub] = lower_subdivision(q);
                detail::write_file(detail::out_path(cfg, "subdivision.svg"), subdivision_svg(sub));
                detail::write_file(detail::out_path(cfg, "curve.svg"), curve_svg(census));
            }
        }
    } catch (const std::exception& e) {
        report["stages"] = std::move(stages);
        report["error"] = e.what();
        report["overall_pass"] = false;
        all_pass = false;
        exit_code = std::string(e.what()).find("infeasible") != std::string::npos
                        ? kExitInfeasible
                        : kExitVerifyFail;
        err << "verify: " << e.what() << "\n";
    }

    const std::string text = detail::dump(report);
    detail::write_file(detail::out_path(cfg, "report.json"), text);
    out << text;
    err << "verify d=" << cfg.degree << (literal ? " literal" : " simplex") << ": "
        << (all_pass ? "all stages passed" : "FAILURES (see report.json)") << "\n";
    if (exit_code == kExitOk && !all_pass) exit_code = kExitVerifyFail;
    return exit_code;
}

inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == "hessian") return cmd_hessian(cfg, out, err);
    if (cfg.command == "construct") return cmd_construct(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "count") return cmd_count(cfg, out, err);
    err << "unknown command\n";
    return kExitUsage;
}

}  // namespace hessweave
