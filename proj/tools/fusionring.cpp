// Command-line interface for fusion ring computations: ring inspection,
// multiplier evaluation, TLJ admissibility/moments/Plancherel/norms, and
// spectral norm & amenability reports.
//
// Exit codes: 0 computation done (verdict content may still be negative),
// 2 usage error, 3 validation error, 4 numeric failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fusion/io.hpp"
#include "fusion/spectral.hpp"
#include "fusion/tlj_analysis.hpp"

using namespace fusion;

namespace {

std::string slurp_or_inline(const std::string& arg) {
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return arg;
    std::ifstream in(arg);
    if (!in) throw ValidationError("cannot open spec file '" + arg + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ParsedRing load_ring(const std::string& arg) {
    return parse_ring_spec_text(slurp_or_inline(arg));
}

void emit(const Json& env) { std::cout << env.dump(2) << "\n"; }

Json witness_json(const RejectWitness& w) {
    Json vec = Json::array();
    for (double v : w.eigenvector) vec.push_back(v);
    return Json{{"matrix", w.matrix_id},
                {"level", w.level},
                {"min_eigenvalue", w.min_eigenvalue},
                {"eigenvector", vec}};
}

struct Options {
    std::string ring_spec;
    std::string mult_spec;
    std::string label_a, label_b;
    std::string labels;
    std::string element;
    std::string x_elem, y_elem;
    std::string lambda_inv = "5";
    std::string t;
    int level = 4;
    int count = 16;
    int n = 0, m = 0;
    int n_max = 200;
    int truncation = 128;
    int amen_truncation = 500;
    int iterations = 0;
    int points = 2048;
    int adm_level = 12;
    double tol = 1e-9;
    double power_tol = 1e-12;
    double amen_tol = 1e-3;
    double qtol = 1e-8;
    bool csv = false;
};

std::vector<Label> pick_labels(const RingPtr& ring, const Options& opt) {
    std::vector<Label> out;
    if (!opt.labels.empty()) {
        std::stringstream ss(opt.labels);
        std::string item;
        while (std::getline(ss, item, ';'))
            if (!item.empty()) out.push_back(ring->label_from_string(item));
    } else {
        out = ring->labels_up_to_level(opt.level);
    }
    return out;
}

int cmd_ring_describe(const Options& opt) {
    ParsedRing pr = load_ring(opt.ring_spec);
    Json labels = Json::array();
    for (const auto& l : pr.ring->labels_up_to_level(opt.level)) {
        Json row{{"label", pr.ring->label_to_string(l)},
                 {"level", pr.ring->level(l)},
                 {"dim", pr.ring->dim(l)}};
        if (auto d = pr.ring->dim_rat(l))
            row["dim_exact"] = rational_to_string(*d);
        labels.push_back(row);
    }
    Json result{{"name", pr.ring->name()},
                {"rational_dims", pr.ring->rational_dims()},
                {"labels", labels}};
    if (auto c = pr.ring->label_count()) result["label_count"] = *c;
    emit(make_envelope("ring describe",
                       Json{{"spec", pr.spec}, {"level", opt.level}}, result));
    return 0;
}

int cmd_ring_fuse(const Options& opt) {
    ParsedRing pr = load_ring(opt.ring_spec);
    Label a = pr.ring->label_from_string(opt.label_a);
    Label b = pr.ring->label_from_string(opt.label_b);
    Json terms = Json::array();
    for (const auto& [g, m] : pr.ring->fuse(a, b).terms)
        terms.push_back(Json::array({pr.ring->label_to_string(g), m}));
    emit(make_envelope(
        "ring fuse",
        Json{{"spec", pr.spec}, {"a", opt.label_a}, {"b", opt.label_b}},
        Json{{"terms", terms}}));
    return 0;
}

int cmd_ring_dims(const Options& opt) {
    ParsedRing pr = load_ring(opt.ring_spec);
    auto labels = pr.ring->labels_up_to_level(opt.level);
    if (opt.csv) {
        std::cout << "label,level,dim\n";
        for (const auto& l : labels)
            std::cout << pr.ring->label_to_string(l) << ","
                      << pr.ring->level(l) << ","
                      << format_double(pr.ring->dim(l)) << "\n";
        return 0;
    }
    Json rows = Json::array();
    for (const auto& l : labels)
        rows.push_back(Json::array({pr.ring->label_to_string(l),
                                    pr.ring->level(l), pr.ring->dim(l)}));
    emit(make_envelope("ring dims",
                       Json{{"spec", pr.spec}, {"level", opt.level}},
                       Json{{"dims", rows}}));
    return 0;
}

int cmd_mult_eval(const Options& opt) {
    ParsedRing pr = load_ring(opt.ring_spec);
    Multiplier phi = parse_multiplier_spec_text(opt.mult_spec, pr.ring);
    auto labels = pick_labels(pr.ring, opt);
    if (opt.csv) {
        std::cout << "label,level,dim,phi_re,phi_im\n";
        for (const auto& l : labels) {
            auto v = phi.eval(l);
            std::cout << pr.ring->label_to_string(l) << ","
                      << pr.ring->level(l) << ","
                      << format_double(pr.ring->dim(l)) << ","
                      << format_double(v.real()) << ","
                      << format_double(v.imag()) << "\n";
        }
        return 0;
    }
    Json rows = Json::array();
    for (const auto& l : labels) {
        auto v = phi.eval(l);
        Json row{{"label", pr.ring->label_to_string(l)},
                 {"level", pr.ring->level(l)},
                 {"dim", pr.ring->dim(l)},
                 {"re", v.real()},
                 {"im", v.imag()}};
        if (auto e = phi.eval_exact(l)) {
            row["re_exact"] = rational_to_string(e->re);
            row["im_exact"] = rational_to_string(e->im);
        }
        rows.push_back(row);
    }
    emit(make_envelope(
        "mult eval",
        Json{{"spec", pr.spec}, {"multiplier", Json::parse(opt.mult_spec)}},
        Json{{"values", rows},
             {"claimed_cp", phi.claimed_cp()},
             {"finitely_supported", phi.finitely_supported()}}));
    return 0;
}

int cmd_mult_convolve(const Options& opt) {
    ParsedRing pr = load_ring(opt.ring_spec);
    Multiplier phi = parse_multiplier_spec_text(opt.mult_spec, pr.ring);
    FusionElement x = parse_element(pr.ring, opt.x_elem);
    FusionElement y =
        opt.y_elem.empty() ? x : parse_element(pr.ring, opt.y_elem);
    Multiplier conv = convolve(phi, x, y);
    Json rows = Json::array();
    for (const auto& l : pick_labels(pr.ring, opt)) {
        auto v = conv.eval(l);
        Json row{{"label", pr.ring->label_to_string(l)},
                 {"re", v.real()},
                 {"im", v.imag()}};
        if (auto e = conv.eval_exact(l)) {
            row["re_exact"] = rational_to_string(e->re);
            row["im_exact"] = rational_to_string(e->im);
        }
        rows.push_back(row);
    }
    emit(make_envelope(
        "mult convolve",
        Json{{"spec", pr.spec},
             {"multiplier", Json::parse(opt.mult_spec)},
             {"x", opt.x_elem},
             {"y", opt.y_elem.empty() ? opt.x_elem : opt.y_elem}},
        Json{{"values", rows}, {"claimed_cp", conv.claimed_cp()}}));
    return 0;
}

Multiplier tlj_multiplier_from_options(const ParsedRing& pr,
                                       const Options& opt) {
    if (!opt.t.empty()) return phi_point(pr.ring, parse_rational(opt.t));
    if (!opt.mult_spec.empty())
        return parse_multiplier_spec_text(opt.mult_spec, pr.ring);
    throw ValidationError("need --t or --mult");
}

ParsedRing tlj_ring_from_options(const Options& opt) {
    Json spec{{"kind", "tlj_ainf"}, {"lambda_inv", opt.lambda_inv}};
    return parse_ring_spec(spec);
}

int cmd_tlj_admissible(const Options& opt) {
    ParsedRing pr = tlj_ring_from_options(opt);
    Multiplier phi = tlj_multiplier_from_options(pr, opt);
    MomentSequence ms = moments(phi, 2 * opt.adm_level + 2);
    AdmissibilityVerdict v = admissibility(ms, opt.adm_level, opt.tol);
    Json result{{"verdict", v.kind_name()},
                {"level", v.level},
                {"exact_mode", v.exact_mode}};
    Json witnesses = Json::object();
    if (v.witness) witnesses["psd_failure"] = witness_json(*v.witness);
    emit(make_envelope("tlj admissible",
                       Json{{"lambda_inv", opt.lambda_inv},
                            {"t", opt.t},
                            {"level", opt.adm_level}},
                       result, witnesses, Json{{"tol", opt.tol}}));
    return 0;
}

int cmd_tlj_moments(const Options& opt) {
    ParsedRing pr = tlj_ring_from_options(opt);
    Multiplier phi = tlj_multiplier_from_options(pr, opt);
    MomentSequence ms = moments(phi, opt.count);
    if (opt.csv) {
        std::cout << "k,m_k\n";
        for (int k = 0; k < ms.count(); ++k)
            std::cout << k << "," << format_double(ms.values[k]) << "\n";
        return 0;
    }
    Json vals = Json::array();
    for (int k = 0; k < ms.count(); ++k) {
        Json row{{"k", k}, {"m", ms.values[k]}};
        if (ms.exact) row["m_exact"] = rational_to_string((*ms.exact)[k]);
        vals.push_back(row);
    }
    emit(make_envelope("tlj moments",
                       Json{{"lambda_inv", opt.lambda_inv},
                            {"t", opt.t},
                            {"count", opt.count}},
                       Json{{"moments", vals}}));
    return 0;
}

int cmd_tlj_plancherel(const Options& opt) {
    QuadratureParams qp{opt.points, opt.qtol};
    double v = plancherel_pair(opt.n, opt.m, qp);
    emit(make_envelope(
        "tlj plancherel", Json{{"n", opt.n}, {"m", opt.m}}, Json{{"value", v}},
        Json::object(),
        Json{{"quadrature_tol", opt.qtol}, {"points", opt.points}}));
    return 0;
}

int cmd_tlj_norms(const Options& opt) {
    ParsedRing pr = tlj_ring_from_options(opt);
    FusionElement x = parse_element(pr.ring, opt.element);
    double uni = universal_norm(x, to_double(*tlj_lambda_inv(*pr.ring)));
    double red = reduced_norm(x);
    emit(make_envelope(
        "tlj norms",
        Json{{"lambda_inv", opt.lambda_inv}, {"element", opt.element}},
        Json{{"universal_norm", uni},
             {"reduced_norm", red},
             {"l1_bound", l1_bound(x)}}));
    return 0;
}

int cmd_tlj_l1range(const Options& opt) {
    if (opt.t.empty()) throw ValidationError("need --t");
    auto res = l1_range_check(parse_rational(opt.lambda_inv),
                              parse_rational(opt.t), opt.n_max);
    Json result{{"ok", res.ok}};
    if (!res.ok) {
        result["first_violation"] = res.first_violation;
        result["abs_V_t"] = res.lhs;
        result["V_lambda_inv"] = res.rhs;
    }
    emit(make_envelope(
        "tlj l1range",
        Json{{"lambda_inv", opt.lambda_inv}, {"t", opt.t}, {"n_max", opt.n_max}},
        result));
    return 0;
}

int cmd_spectral_norm(const Options& opt) {
    ParsedRing pr = load_ring(opt.ring_spec);
    FusionElement x = parse_element(pr.ring, opt.element);
    NormEstimate est = norm_estimate(pr.ring, x, opt.truncation,
                                     opt.iterations, opt.power_tol);
    if (opt.csv) {
        std::cout << "N,estimate\n";
        for (const auto& [n, e] : est.lower_bounds)
            std::cout << n << "," << format_double(e) << "\n";
        return 0;
    }
    Json bounds = Json::array();
    for (const auto& [n, e] : est.lower_bounds)
        bounds.push_back(Json::array({n, e}));
    emit(make_envelope("spectral norm",
                       Json{{"spec", pr.spec},
                            {"generator", opt.element},
                            {"truncation", opt.truncation}},
                       Json{{"estimate", est.estimate},
                            {"lower_bounds", bounds},
                            {"converged", est.converged},
                            {"iterations", est.iterations},
                            {"squared_symmetrization", est.squared}},
                       Json::object(), Json{{"tol", opt.power_tol}}));
    return 0;
}

int cmd_spectral_amenability(const Options& opt) {
    ParsedRing pr = load_ring(opt.ring_spec);
    FusionElement x = parse_element(pr.ring, opt.element);
    AmenabilityReport rep =
        amenability_report(pr.ring, x, opt.amen_truncation, opt.amen_tol);
    Json result{{"verdict", rep.verdict_name()},
                {"estimate", rep.estimate},
                {"dimension", rep.dimension},
                {"relative_gap", rep.relative_gap},
                {"exact_equality", rep.exact_equality},
                {"method", rep.method}};
    if (rep.upper_bound) result["upper_bound"] = *rep.upper_bound;
    emit(make_envelope("spectral amenability",
                       Json{{"spec", pr.spec},
                            {"generator", opt.element},
                            {"truncation", opt.amen_truncation}},
                       result, Json::object(), Json{{"tol", opt.amen_tol}}));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fusion rings, multipliers and TLJ representation theory"};
    app.require_subcommand(1);
    Options opt;

    auto* ring = app.add_subcommand("ring", "fusion ring inspection");
    ring->require_subcommand(1);
    auto* describe = ring->add_subcommand("describe", "labels, levels, dims");
    describe->add_option("--spec", opt.ring_spec, "ring spec (JSON or file)")
        ->required();
    describe->add_option("--level", opt.level, "max level to list");
    auto* fuse = ring->add_subcommand("fuse", "decompose a tensor product");
    fuse->add_option("--spec", opt.ring_spec)->required();
    fuse->add_option("--a", opt.label_a)->required();
    fuse->add_option("--b", opt.label_b)->required();
    auto* dims = ring->add_subcommand("dims", "dimension table");
    dims->add_option("--spec", opt.ring_spec)->required();
    dims->add_option("--level", opt.level);
    dims->add_flag("--csv", opt.csv);

    auto* mult = app.add_subcommand("mult", "multiplier calculus");
    mult->require_subcommand(1);
    auto* meval = mult->add_subcommand("eval", "evaluate a multiplier");
    meval->add_option("--spec", opt.ring_spec)->required();
    meval->add_option("--mult", opt.mult_spec)->required();
    meval->add_option("--labels", opt.labels, "semicolon separated labels");
    meval->add_option("--level", opt.level);
    meval->add_flag("--csv", opt.csv);
    auto* mconv = mult->add_subcommand("convolve", "phi_{x,y}");
    mconv->add_option("--spec", opt.ring_spec)->required();
    mconv->add_option("--mult", opt.mult_spec)->required();
    mconv->add_option("--x", opt.x_elem)->required();
    mconv->add_option("--y", opt.y_elem, "defaults to x");
    mconv->add_option("--labels", opt.labels);
    mconv->add_option("--level", opt.level);

    auto* tlj = app.add_subcommand("tlj", "Temperley-Lieb-Jones analysis");
    tlj->require_subcommand(1);
    auto* adm = tlj->add_subcommand("admissible", "moment-matrix PSD check");
    adm->add_option("--lambda-inv", opt.lambda_inv)->required();
    adm->add_option("--t", opt.t, "point multiplier parameter");
    adm->add_option("--mult", opt.mult_spec, "multiplier spec");
    adm->add_option("--level", opt.adm_level);
    adm->add_option("--tol", opt.tol);
    auto* mom = tlj->add_subcommand("moments", "m_k = omega_phi(X^k)");
    mom->add_option("--lambda-inv", opt.lambda_inv)->required();
    mom->add_option("--t", opt.t);
    mom->add_option("--mult", opt.mult_spec);
    mom->add_option("--count", opt.count);
    mom->add_flag("--csv", opt.csv);
    auto* pla = tlj->add_subcommand("plancherel", "int V_n V_m dmu");
    pla->add_option("--n", opt.n)->required();
    pla->add_option("--m", opt.m)->required();
    pla->add_option("--points", opt.points);
    pla->add_option("--tol", opt.qtol);
    auto* nrm = tlj->add_subcommand("norms", "universal and reduced norms");
    nrm->add_option("--lambda-inv", opt.lambda_inv)->required();
    nrm->add_option("--element", opt.element)->required();
    auto* l1r = tlj->add_subcommand("l1range", "scan |V_n(t)| <= V_n(li)");
    l1r->add_option("--lambda-inv", opt.lambda_inv)->required();
    l1r->add_option("--t", opt.t)->required();
    l1r->add_option("--n-max", opt.n_max);

    auto* spectral = app.add_subcommand("spectral", "regular representation");
    spectral->require_subcommand(1);
    auto* snorm = spectral->add_subcommand("norm", "norm lower bounds");
    snorm->add_option("--spec,--ring", opt.ring_spec)->required();
    snorm->add_option("--generator", opt.element)->required();
    snorm->add_option("--truncation", opt.truncation);
    snorm->add_option("--iterations", opt.iterations);
    snorm->add_option("--tol", opt.power_tol);
    snorm->add_flag("--csv", opt.csv);
    auto* samen = spectral->add_subcommand("amenability", "Kesten test");
    samen->add_option("--spec,--ring", opt.ring_spec)->required();
    samen->add_option("--generator", opt.element)->required();
    samen->add_option("--truncation", opt.amen_truncation);
    samen->add_option("--tol", opt.amen_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (describe->parsed()) return cmd_ring_describe(opt);
        if (fuse->parsed()) return cmd_ring_fuse(opt);
        if (dims->parsed()) return cmd_ring_dims(opt);
        if (meval->parsed()) return cmd_mult_eval(opt);
        if (mconv->parsed()) return cmd_mult_convolve(opt);
        if (adm->parsed()) return cmd_tlj_admissible(opt);
        if (mom->parsed()) return cmd_tlj_moments(opt);
        if (pla->parsed()) return cmd_tlj_plancherel(opt);
        if (nrm->parsed()) return cmd_tlj_norms(opt);
        if (l1r->parsed()) return cmd_tlj_l1range(opt);
        if (snorm->parsed()) return cmd_spectral_norm(opt);
        if (samen->parsed()) return cmd_spectral_amenability(opt);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << " (achieved "
                  << e.achieved << ")\n";
        return 4;
    } catch (const FusionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
