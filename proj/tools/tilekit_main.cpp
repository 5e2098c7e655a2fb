// Command-line front end.  Subcommands build codes, analyze their logical
// algebra, run the sliding protocol, and bound distances; every run prints
// one JSON document to stdout and exits 0 exactly when all requested checks
// pass.  All randomness is seeded, so reruns with the same flags produce
// identical bytes.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tilekit/autos.hpp"
#include "tilekit/code.hpp"
#include "tilekit/distance.hpp"
#include "tilekit/gf2.hpp"
#include "tilekit/koszul.hpp"
#include "tilekit/logicals.hpp"
#include "tilekit/poly.hpp"
#include "tilekit/protocol.hpp"
#include "tilekit/quotient.hpp"

namespace {

using namespace tilekit;
using nlohmann::json;

// Everything a subcommand needs, collected before any work starts.
struct RunConfig {
    std::string command;
    std::string f_text, g_text;  // flat-lattice tiles
    std::string polys_text;      // higher-dimensional tiles, ';' separated
    std::string d_text = "auto";
    int L = 0, M = 0;
    std::vector<int> shape;
    std::string format = "json";
    std::string out_prefix;
    std::string preset;
    bool require_to = false;
    int window = 0;
    long long steps = 1;
    int epsilon = 1;
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
};

// A usage mistake CLI11 could not catch itself (conditionally required
// flags); printed with the usage hint and exited like a parse error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void apply_preset(RunConfig& cfg) {
    if (cfg.preset.empty()) return;
    if (cfg.preset == "running2d") {
        cfg.f_text = "1+x^2*y+x^2*y^2";
        cfg.g_text = "x+x^2+y^2";
        cfg.d_text = "2";
        cfg.L = 12;
        cfg.M = 12;
        return;
    }
    if (cfg.preset == "paper4d") {
        cfg.polys_text =
            "1+x*y+w*y*z+w*x*z+x;"
            "x*z+w+w*x*y+w*x*y*z+z;"
            "y*z+x+w*z+w*y+w*x*y;"
            "z+y+x*y*z+w*x+w*x*z";
        cfg.shape = {3, 3, 3, 3};
        cfg.d_text = "1";
        return;
    }
    throw UsageError("unknown preset: " + cfg.preset);
}

bool wants_nd(const RunConfig& cfg) { return !cfg.polys_text.empty() || !cfg.shape.empty(); }

TilePair parse_tiles(const RunConfig& cfg) {
    if (cfg.f_text.empty() || cfg.g_text.empty())
        throw UsageError("provide --f and --g, or --preset");
    LaurentPoly f = parse_poly(cfg.f_text, 2);
    LaurentPoly g = parse_poly(cfg.g_text, 2);
    int D = cfg.d_text == "auto" ? infer_tile_width(f, g) : std::stoi(cfg.d_text);
    return make_tile_pair(f, g, D);
}

CssCode build_flat(const RunConfig& cfg, TilePair& tiles) {
    tiles = parse_tiles(cfg);
    if (cfg.L <= 0 || cfg.M <= 0) throw UsageError("provide positive -L and -M, or --preset");
    return build_tile_code(tiles, cfg.L, cfg.M);
}

CssCode build_box(const RunConfig& cfg) {
    if (cfg.polys_text.empty() || cfg.shape.empty())
        throw UsageError("provide --polys and --shape, or --preset paper4d");
    std::vector<LaurentPoly> polys;
    std::stringstream ss(cfg.polys_text);
    std::string part;
    while (std::getline(ss, part, ';'))
        polys.push_back(parse_poly(part, int(cfg.shape.size())));
    int D = 1;
    if (cfg.d_text != "auto")
        D = std::stoi(cfg.d_text);
    else {
        for (const LaurentPoly& p : polys) {
            DegreeBox box = p.degree_box();
            for (std::size_t v = 0; v < cfg.shape.size(); ++v) D = std::max(D, box.hi[v]);
        }
    }
    return build_box_code(make_koszul_spec(std::move(polys), D, cfg.shape));
}

// Every build must produce commuting checks; anything else is a hard bug.
bool checks_orthogonal(const CssCode& code) {
    for (std::size_t r = 0; r < code.hx.rows(); ++r) {
        BitVec row = code.hx.row(r);
        for (std::size_t s = 0; s < code.hz.rows(); ++s)
            if (code.hz.row(s).dot(row)) return false;
    }
    return true;
}

json params_json(const CssCode& code) {
    CodeParams p = code_params(code);
    json j;
    j["n"] = p.n;
    j["k"] = p.k;
    j["counts"] = {{"x", p.x_checks}, {"z", p.z_checks}};
    return j;
}

json to_json(const ToReport& to) {
    json j;
    j["coprime_orientations"] = to.coprime;
    j["finite"] = to.finite;
    j["dim"] = to.dim;
    j["dim_matches"] = to.dim_matches;
    j["x_invertible"] = to.mx_invertible;
    j["y_invertible"] = to.my_invertible;
    j["pass"] = to.pass;
    return j;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

// Matrix files in the requested format next to the JSON report; the report
// itself always goes to stdout as well.
void write_outputs(const RunConfig& cfg, const CssCode& code, const json& report) {
    if (cfg.out_prefix.empty()) return;
    if (cfg.format == "alist") {
        write_file(cfg.out_prefix + ".hx.alist", export_alist(code.hx));
        write_file(cfg.out_prefix + ".hz.alist", export_alist(code.hz));
    } else if (cfg.format == "triplets") {
        write_file(cfg.out_prefix + ".hx.triplets", export_triplets(code.hx));
        write_file(cfg.out_prefix + ".hz.triplets", export_triplets(code.hz));
    }
    write_file(cfg.out_prefix + ".json", report.dump(2) + "\n");
}

int finish(const RunConfig& cfg, const CssCode& code, json& report, bool pass) {
    report["pass"] = pass;
    write_outputs(cfg, code, report);
    std::cout << report.dump(2) << "\n";
    return pass ? 0 : 1;
}

int cmd_build(const RunConfig& cfg) {
    if (wants_nd(cfg)) {
        CssCode code = build_box(cfg);
        json report = params_json(code);
        report["shape"] = code.shape;
        report["tiles"] = code.poly_strings;
        bool orthogonal = checks_orthogonal(code);
        report["checks"] = {{"orthogonal", orthogonal}};
        return finish(cfg, code, report, orthogonal);
    }
    TilePair tiles;
    CssCode code = build_flat(cfg, tiles);
    json report = params_json(code);
    report["D"] = code.D;
    report["shape"] = {code.L, code.M};
    report["tiles"] = {{"f", tiles.f.to_string()}, {"g", tiles.g.to_string()}};
    bool orthogonal = checks_orthogonal(code);
    ToReport to = check_algebraic_to(tiles.f, tiles.g, tiles.D);
    report["checks"] = {{"orthogonal", orthogonal}, {"to_algebraic", to_json(to)}};
    bool pass = orthogonal && (!cfg.require_to || to.pass);
    return finish(cfg, code, report, pass);
}

int cmd_analyze(const RunConfig& cfg) {
    TilePair tiles;
    CssCode code = build_flat(cfg, tiles);
    json report = params_json(code);
    report["D"] = code.D;
    report["shape"] = {code.L, code.M};
    report["tiles"] = {{"f", tiles.f.to_string()}, {"g", tiles.g.to_string()}};

    bool orthogonal = checks_orthogonal(code);
    ToReport to = check_algebraic_to(tiles.f, tiles.g, tiles.D);
    report["checks"] = {{"orthogonal", orthogonal}, {"to_algebraic", to_json(to)}};

    QuotientRing ring = quotient_ring(tiles.f, tiles.g, tiles.D);
    UniPoly cp = char_poly(ring.mx);
    json factors = json::array();
    for (const auto& [p, m] : factor(cp)) factors.push_back({{"poly", p.to_string()}, {"mult", m}});
    report["quotient"] = {{"dim", ring.dim},
                          {"char_poly_x", cp.to_string()},
                          {"char_poly_x_factors", factors}};

    SymplecticBasis basis = build_basis(code);
    LogicalAuto tx = derived_auto(code, basis, AutoAxis::x);
    LogicalAuto ty = derived_auto(code, basis, AutoAxis::y);
    bool ix = intertwiner_check(code, basis, ring, tx);
    bool iy = intertwiner_check(code, basis, ring, ty);
    std::optional<std::uint64_t> ty_power = discrete_log(tx, ty);
    json shifts;
    shifts["x"] = {{"order", matrix_order(tx.x_action)}, {"intertwines", ix}};
    shifts["y"] = {{"order", matrix_order(ty.x_action)},
                   {"intertwines", iy},
                   {"power_of_x", ty_power ? json(*ty_power) : json()}};
    report["shifts"] = shifts;

    report["basis"] = json::parse(export_basis_json(code, basis));
    report["rules"] = json::parse(export_rules_json(extract_rules(tiles)));

    bool window_pass = true;
    if (cfg.window > 0) {
        WindowToReport wto = check_combinatorial_to(tiles.f, tiles.g, tiles.D, cfg.window);
        window_pass = wto.pass;
        json quads = json::array();
        for (const QuadrantVerdict& q : wto.quadrants)
            quads.push_back({{"x_side", q.x_side}, {"z_side", q.z_side}});
        report["checks"]["to_window"] = {{"window", cfg.window},
                                         {"quadrants", quads},
                                         {"pass", wto.pass}};
    }

    bool pass = orthogonal && to.pass && ix && iy && ty_power.has_value() && window_pass;
    return finish(cfg, code, report, pass);
}

// Sign vector update a verified slide implies: with B the Z-side action of
// the applied shift, the new exponent vector is (B^T)^{-1} applied to the
// old one.
std::vector<int> slid_signs(const BitMatrix& z_action, const std::vector<int>& sigma) {
    BitVec s(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) s.set(i, sigma[i] < 0);
    BitVec r = inverse(z_action.transposed())->mul(s);
    std::vector<int> out(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) out[i] = r.get(i) ? -1 : 1;
    return out;
}

int cmd_slide(const RunConfig& cfg) {
    TilePair tiles;
    CssCode code = build_flat(cfg, tiles);
    json report = params_json(code);
    report["epsilon"] = cfg.epsilon;
    report["seed"] = cfg.seed;
    report["steps"] = cfg.steps;

    SymplecticBasis basis = build_basis(code);
    LogicalAuto aut = derived_auto(code, basis, AutoAxis::x, cfg.epsilon);
    report["order_x_shift"] = matrix_order(aut.x_action);

    std::vector<int> sigma(basis.zs.size(), 1);
    StabilizerState state = prepare_logical_state(code, basis, sigma);
    bool verified = true;
    json slides = json::array();
    for (long long step = 0; step < cfg.steps; ++step) {
        SlideResult slid = run_slide(code, basis, state, cfg.epsilon, cfg.seed + std::uint64_t(step));
        auto frame = frame_fix(code, basis, aut, sigma, slid.state);
        if (!frame) {
            verified = false;
            slides.push_back(json::parse(export_trace_json(slid.trace)));
            break;
        }
        apply_z_pauli(slid.state, frame->first);
        apply_x_pauli(slid.state, frame->second);
        state = std::move(slid.state);
        sigma = slid_signs(aut.z_action, sigma);
        slides.push_back(json::parse(export_trace_json(slid.trace)));
    }
    report["slides"] = std::move(slides);
    report["verified"] = verified;

    LogicalAuto composed = auto_power(aut, cfg.steps);
    bool identity = composed.x_action == BitMatrix::identity(basis.xs.size()) &&
                    composed.z_action == BitMatrix::identity(basis.zs.size());
    report["identity_action"] = identity;
    report["final_signs"] = sigma;
    return finish(cfg, code, report, verified);
}

int cmd_distance(const RunConfig& cfg) {
    CssCode code;
    if (wants_nd(cfg)) {
        code = build_box(cfg);
    } else {
        TilePair tiles;
        code = build_flat(cfg, tiles);
    }
    json report = params_json(code);
    std::size_t k = report["k"];
    if (code.n <= 28) report["exact"] = json::parse(export_distance_json(exact_distance(code)));
    if (k >= 1 && cfg.trials > 0)
        report["sampled"] =
            json::parse(export_distance_json(stochastic_upper(code, cfg.trials, cfg.seed)));
    return finish(cfg, code, report, true);
}

int cmd_build_nd(const RunConfig& cfg) {
    CssCode code = build_box(cfg);
    json report = params_json(code);
    report["shape"] = code.shape;
    report["tiles"] = code.poly_strings;
    bool orthogonal = checks_orthogonal(code);
    report["checks"] = {{"orthogonal", orthogonal}};
    return finish(cfg, code, report, orthogonal);
}

void add_tile_options(CLI::App* sub, RunConfig& cfg, bool nd) {
    if (nd) {
        sub->add_option("--polys", cfg.polys_text, "Tile polynomials, ';' separated");
        sub->add_option("--shape", cfg.shape, "Box side lengths, comma separated")
            ->delimiter(',');
    } else {
        auto* f = sub->add_option("--f", cfg.f_text, "First tile polynomial");
        auto* g = sub->add_option("--g", cfg.g_text, "Second tile polynomial");
        f->needs(g);
        g->needs(f);
        sub->add_option("-L", cfg.L, "Lattice width");
        sub->add_option("-M", cfg.M, "Lattice height");
    }
    sub->add_option("-D", cfg.d_text, "Tile width, or 'auto'")->capture_default_str();
    sub->add_option("--preset", cfg.preset, "running2d or paper4d")
        ->check(CLI::IsMember({"running2d", "paper4d"}));
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "Matrix file format")
        ->check(CLI::IsMember({"alist", "triplets", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out_prefix, "Output file prefix");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Tile code toolkit"};
    app.require_subcommand(1);

    CLI::App* build = app.add_subcommand("build", "Build a code and export its check matrices");
    add_tile_options(build, cfg, false);
    add_output_options(build, cfg);
    build->add_option("--polys", cfg.polys_text, "Tile polynomials, ';' separated");
    build->add_option("--shape", cfg.shape, "Box side lengths, comma separated")->delimiter(',');
    build->add_flag("--require-to", cfg.require_to, "Fail when topological order fails");

    CLI::App* analyze = app.add_subcommand("analyze", "Build plus logical-algebra report");
    add_tile_options(analyze, cfg, false);
    add_output_options(analyze, cfg);
    analyze->add_flag("--require-to", cfg.require_to, "Fail when topological order fails");
    analyze->add_option("--window", cfg.window, "Combinatorial order probe window");

    CLI::App* slide = app.add_subcommand("slide", "Run verified sliding steps");
    add_tile_options(slide, cfg, false);
    slide->add_option("--steps", cfg.steps, "Number of slides")->capture_default_str();
    slide->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    slide->add_option("--epsilon", cfg.epsilon, "Slide direction")
        ->check(CLI::IsMember({1, -1}))
        ->capture_default_str();

    CLI::App* distance = app.add_subcommand("distance", "Distance enumeration and sampling");
    add_tile_options(distance, cfg, false);
    distance->add_option("--polys", cfg.polys_text, "Tile polynomials, ';' separated");
    distance->add_option("--shape", cfg.shape, "Box side lengths, comma separated")
        ->delimiter(',');
    distance->add_option("--trials", cfg.trials, "Sampling budget")->capture_default_str();
    distance->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();

    CLI::App* build_nd = app.add_subcommand("build-nd", "Build a higher-dimensional box code");
    add_tile_options(build_nd, cfg, true);
    add_output_options(build_nd, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_preset(cfg);
        if (build->parsed()) return cmd_build(cfg);
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (slide->parsed()) return cmd_slide(cfg);
        if (distance->parsed()) return cmd_distance(cfg);
        if (build_nd->parsed()) return cmd_build_nd(cfg);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
