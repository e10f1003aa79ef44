#include "fuyau/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "fuyau/errors.hpp"

namespace fuyau {

using json = nlohmann::ordered_json;

namespace {

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

template <typename T>
T get_req(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing required key '" + key + "'");
    return get_or<T>(j, key, T{}, where);
}

TrigPolynomial parse_poly(const json& j, const std::string& where) {
    require_object(j, where);
    reject_unknown(j, {"constant", "terms"}, where);
    TrigPolynomial p;
    p.constant = get_or<double>(j, "constant", 0.0, where);
    if (j.contains("terms")) {
        if (!j["terms"].is_array()) throw ConfigError(where + ".terms: expected an array");
        for (const auto& t : j["terms"]) {
            const std::string tw = where + ".terms[]";
            require_object(t, tw);
            reject_unknown(t, {"amp", "factors"}, tw);
            TrigTerm term;
            term.amp = get_req<double>(t, "amp", tw);
            if (t.contains("factors")) {
                if (!t["factors"].is_array()) throw ConfigError(tw + ".factors: expected an array");
                for (const auto& f : t["factors"]) {
                    const std::string fw = tw + ".factors[]";
                    require_object(f, fw);
                    reject_unknown(f, {"axis", "k", "fn"}, fw);
                    TrigFactor fac;
                    fac.axis = get_req<int>(f, "axis", fw);
                    fac.k = get_req<int>(f, "k", fw);
                    try {
                        fac.fn = trig_fn_from_string(get_req<std::string>(f, "fn", fw));
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError(fw + ": " + e.what());
                    }
                    term.factors.push_back(fac);
                }
            }
            p.terms.push_back(std::move(term));
        }
    }
    return p;
}

json poly_json(const TrigPolynomial& p) {
    json j;
    j["constant"] = p.constant;
    j["terms"] = json::array();
    for (const auto& t : p.terms) {
        json jt;
        jt["amp"] = t.amp;
        jt["factors"] = json::array();
        for (const auto& f : t.factors) jt["factors"].push_back({{"axis", f.axis}, {"k", f.k}, {"fn", to_string(f.fn)}});
        j["terms"].push_back(jt);
    }
    return j;
}

RhoSpec parse_rho(const json& j) {
    const std::string w = "problem.rho";
    require_object(j, w);
    RhoSpec r;
    r.family = get_req<std::string>(j, "family", w);
    if (r.family == "scaled_identity") {
        reject_unknown(j, {"family", "c"}, w);
        r.c = get_req<double>(j, "c", w);
    } else if (r.family == "diagonal_trig") {
        reject_unknown(j, {"family", "base", "amplitudes", "wave_vectors"}, w);
        r.diagonal.base = get_or<double>(j, "base", 0.0, w);
        r.diagonal.amplitudes = get_req<std::vector<double>>(j, "amplitudes", w);
        r.diagonal.wave_vectors = get_req<std::vector<std::vector<int>>>(j, "wave_vectors", w);
    } else if (r.family == "fourier") {
        reject_unknown(j, {"family", "base", "terms"}, w);
        r.c = get_or<double>(j, "base", 0.0, w);
        if (j.contains("terms")) {
            if (!j["terms"].is_array()) throw ConfigError(w + ".terms: expected an array");
            for (const auto& t : j["terms"]) {
                require_object(t, w + ".terms[]");
                reject_unknown(t, {"k", "coeff"}, w + ".terms[]");
                FourierRhoTerm term;
                term.k = get_req<std::vector<int>>(t, "k", w + ".terms[]");
                term.coeff = get_req<std::vector<std::vector<std::array<double, 2>>>>(t, "coeff", w + ".terms[]");
                r.fourier.push_back(std::move(term));
            }
        }
    } else {
        throw ConfigError(w + ".family: unknown family '" + r.family + "'");
    }
    return r;
}

json rho_json(const RhoSpec& r) {
    json j;
    j["family"] = r.family;
    if (r.family == "scaled_identity") {
        j["c"] = r.c;
    } else if (r.family == "diagonal_trig") {
        j["base"] = r.diagonal.base;
        j["amplitudes"] = r.diagonal.amplitudes;
        j["wave_vectors"] = r.diagonal.wave_vectors;
    } else {
        j["base"] = r.c;
        j["terms"] = json::array();
        for (const auto& t : r.fourier) j["terms"].push_back({{"k", t.k}, {"coeff", t.coeff}});
    }
    return j;
}

MuSpec parse_mu(const json& j) {
    const std::string w = "problem.mu";
    require_object(j, w);
    MuSpec m;
    m.family = get_req<std::string>(j, "family", w);
    if (m.family == "zero") {
        reject_unknown(j, {"family"}, w);
    } else if (m.family == "trig_poly") {
        reject_unknown(j, {"family", "terms"}, w);
        json p = json::object();
        if (j.contains("terms")) p["terms"] = j["terms"];
        m.poly = parse_poly(p, w);
    } else if (m.family == "manufactured") {
        reject_unknown(j, {"family", "phi"}, w);
        if (!j.contains("phi")) throw ConfigError(w + ": manufactured family needs 'phi'");
        m.poly = parse_poly(j["phi"], w + ".phi");
    } else {
        throw ConfigError(w + ".family: unknown family '" + m.family + "'");
    }
    return m;
}

json mu_json(const MuSpec& m) {
    json j;
    j["family"] = m.family;
    if (m.family == "trig_poly") j["terms"] = poly_json(m.poly)["terms"];
    if (m.family == "manufactured") j["phi"] = poly_json(m.poly);
    return j;
}

void validate_problem(const ProblemConfig& p) {
    GridSpec g{p.n, p.N, p.period};
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("problem: ") + e.what());
    }
    if (p.alpha == 0.0 || !std::isfinite(p.alpha)) throw ConfigError("problem.alpha: must be finite and nonzero");
    if (p.A && !(*p.A > 0.0)) throw ConfigError("problem.A: must be positive");
    if (!p.A && p.mu.family != "manufactured") throw ConfigError("problem.A: 'from_manufactured' needs the manufactured mu family");
    const auto axes = static_cast<std::size_t>(2 * p.n);
    auto check_poly = [&](const TrigPolynomial& poly, const char* where) {
        for (const auto& t : poly.terms)
            for (const auto& f : t.factors)
                if (f.axis < 0 || f.axis >= static_cast<int>(axes))
                    throw ConfigError(std::string(where) + ": factor axis out of range");
    };
    check_poly(p.mu.poly, "problem.mu");
    if (p.rho.family == "diagonal_trig") {
        if (p.rho.diagonal.amplitudes.size() != static_cast<std::size_t>(p.n) ||
            p.rho.diagonal.wave_vectors.size() != static_cast<std::size_t>(p.n))
            throw ConfigError("problem.rho: diagonal_trig needs n amplitudes and n wave vectors");
        for (const auto& k : p.rho.diagonal.wave_vectors)
            if (k.size() != axes) throw ConfigError("problem.rho: wave vectors need 2n entries");
    }
    if (p.rho.family == "fourier") {
        for (const auto& t : p.rho.fourier) {
            if (t.k.size() != axes) throw ConfigError("problem.rho: fourier wave vectors need 2n entries");
            if (t.coeff.size() != static_cast<std::size_t>(p.n)) throw ConfigError("problem.rho: fourier coeff must be n x n");
            for (const auto& row : t.coeff)
                if (row.size() != static_cast<std::size_t>(p.n)) throw ConfigError("problem.rho: fourier coeff must be n x n");
        }
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_object(j, "config");
    reject_unknown(j, {"schema", "problem", "solver", "output", "seed"}, "config");
    if (get_req<std::string>(j, "schema", "config") != kConfigSchema) {
        throw ConfigError(std::string("config.schema: expected '") + kConfigSchema + "'");
    }
    RunConfig c;
    if (!j.contains("problem")) throw ConfigError("config: missing required key 'problem'");
    const json& p = j["problem"];
    require_object(p, "problem");
    reject_unknown(p, {"n", "N", "period", "alpha", "A", "rho", "mu"}, "problem");
    c.problem.n = get_req<int>(p, "n", "problem");
    c.problem.N = get_req<int>(p, "N", "problem");
    c.problem.period = get_or<double>(p, "period", 1.0, "problem");
    c.problem.alpha = get_req<double>(p, "alpha", "problem");
    if (!p.contains("A")) throw ConfigError("problem: missing required key 'A'");
    if (p["A"].is_string()) {
        if (p["A"].get<std::string>() != "from_manufactured") throw ConfigError("problem.A: expected a number or 'from_manufactured'");
    } else if (p["A"].is_number()) {
        c.problem.A = p["A"].get<double>();
    } else {
        throw ConfigError("problem.A: expected a number or 'from_manufactured'");
    }
    if (!p.contains("rho")) throw ConfigError("problem: missing required key 'rho'");
    if (!p.contains("mu")) throw ConfigError("problem: missing required key 'mu'");
    c.problem.rho = parse_rho(p["rho"]);
    c.problem.mu = parse_mu(p["mu"]);
    validate_problem(c.problem);

    if (j.contains("solver")) {
        const json& s = j["solver"];
        const std::string w = "solver";
        require_object(s, w);
        reject_unknown(s, {"tol_newton", "tol_lin", "max_newton", "max_halvings", "gmres_restart", "gmres_max_iterations",
                           "probe_kernel", "dt0", "dt_min", "dt_max", "easy_iterations", "direction", "check_delta0"},
                       w);
        SolverConfig d;
        c.solver.tol_newton = get_or(s, "tol_newton", d.tol_newton, w);
        c.solver.tol_lin = get_or(s, "tol_lin", d.tol_lin, w);
        c.solver.max_newton = get_or(s, "max_newton", d.max_newton, w);
        c.solver.max_halvings = get_or(s, "max_halvings", d.max_halvings, w);
        c.solver.gmres_restart = get_or(s, "gmres_restart", d.gmres_restart, w);
        c.solver.gmres_max_iterations = get_or(s, "gmres_max_iterations", d.gmres_max_iterations, w);
        c.solver.probe_kernel = get_or(s, "probe_kernel", d.probe_kernel, w);
        c.solver.dt0 = get_or(s, "dt0", d.dt0, w);
        c.solver.dt_min = get_or(s, "dt_min", d.dt_min, w);
        c.solver.dt_max = get_or(s, "dt_max", d.dt_max, w);
        c.solver.easy_iterations = get_or(s, "easy_iterations", d.easy_iterations, w);
        c.solver.direction = get_or(s, "direction", d.direction, w);
        c.solver.check_delta0 = get_or(s, "check_delta0", d.check_delta0, w);
        if (c.solver.direction != "forward" && c.solver.direction != "reverse")
            throw ConfigError("solver.direction: expected 'forward' or 'reverse'");
        if (!(c.solver.tol_newton > 0.0) || !(c.solver.tol_lin > 0.0)) throw ConfigError("solver: tolerances must be positive");
        if (!(c.solver.dt0 > 0.0) || !(c.solver.dt_min > 0.0) || c.solver.dt_max < c.solver.dt0)
            throw ConfigError("solver: need 0 < dt_min, 0 < dt0 <= dt_max");
        if (c.solver.max_newton < 1 || c.solver.gmres_restart < 1 || c.solver.gmres_max_iterations < 1 || c.solver.max_halvings < 0)
            throw ConfigError("solver: iteration limits must be positive");
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        require_object(o, "output");
        reject_unknown(o, {"dir", "trace", "dump_field"}, "output");
        c.output.dir = get_or<std::string>(o, "dir", c.output.dir, "output");
        c.output.trace = get_or(o, "trace", c.output.trace, "output");
        c.output.dump_field = get_or(o, "dump_field", c.output.dump_field, "output");
    }
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed, "config");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    json j;
    j["schema"] = kConfigSchema;
    json p;
    p["n"] = c.problem.n;
    p["N"] = c.problem.N;
    p["period"] = c.problem.period;
    p["alpha"] = c.problem.alpha;
    if (c.problem.A) {
        p["A"] = *c.problem.A;
    } else {
        p["A"] = "from_manufactured";
    }
    p["rho"] = rho_json(c.problem.rho);
    p["mu"] = mu_json(c.problem.mu);
    j["problem"] = p;
    const auto& s = c.solver;
    j["solver"] = {{"tol_newton", s.tol_newton},     {"tol_lin", s.tol_lin},
                   {"max_newton", s.max_newton},     {"max_halvings", s.max_halvings},
                   {"gmres_restart", s.gmres_restart}, {"gmres_max_iterations", s.gmres_max_iterations},
                   {"probe_kernel", s.probe_kernel}, {"dt0", s.dt0},
                   {"dt_min", s.dt_min},             {"dt_max", s.dt_max},
                   {"easy_iterations", s.easy_iterations}, {"direction", s.direction},
                   {"check_delta0", s.check_delta0}};
    j["output"] = {{"dir", c.output.dir}, {"trace", c.output.trace}, {"dump_field", c.output.dump_field}};
    j["seed"] = c.seed;
    return j.dump(2);
}

std::string output_dir(const RunConfig& c) {
    if (const char* env = std::getenv("FUYAU_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
    return c.output.dir;
}

namespace {

HermitianField build_rho(const ProblemConfig& p, const GridSpec& g) {
    const int n = p.n;
    const double w = 2.0 * std::numbers::pi / g.period;
    const std::size_t m = g.node_count();
    auto phase = [&](const std::vector<int>& k, std::size_t node) {
        double s = 0.0;
        for (int a = 0; a < g.axes(); ++a) s += k[static_cast<std::size_t>(a)] * g.coord(node, a);
        return w * s;
    };
    if (p.rho.family == "scaled_identity") return HermitianField::constant(g, HermMat::identity(n) * p.rho.c);
    std::vector<ComplexField> upper;
    if (p.rho.family == "diagonal_trig") {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                std::vector<cplx> v(m, 0.0);
                if (i == j) {
                    for (std::size_t k = 0; k < m; ++k)
                        v[k] = p.rho.diagonal.base + p.rho.diagonal.amplitudes[static_cast<std::size_t>(i)] *
                                                         std::cos(phase(p.rho.diagonal.wave_vectors[static_cast<std::size_t>(i)], k));
                }
                upper.emplace_back(g, std::move(v));
            }
        return HermitianField::from_upper(g, std::move(upper));
    }
    // fourier: base·I + Σ (C e^{iθ} + Cᴴ e^{−iθ})
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<cplx> v(m, i == j ? cplx(p.rho.c) : cplx(0.0));
            for (const auto& t : p.rho.fourier) {
                const cplx cij(t.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][0],
                               t.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][1]);
                const cplx cji(t.coeff[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][0],
                               t.coeff[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][1]);
                for (std::size_t k = 0; k < m; ++k) {
                    const cplx e = std::polar(1.0, phase(t.k, k));
                    v[k] += cij * e + std::conj(cji) * std::conj(e);
                }
            }
            upper.emplace_back(g, std::move(v));
        }
    return HermitianField::from_upper(g, std::move(upper));
}

}  // namespace

BuiltProblem build_problem(const ProblemConfig& p) {
    validate_problem(p);
    const GridSpec g{p.n, p.N, p.period};
    BuiltProblem b;
    b.data.grid = g;
    b.data.alpha = p.alpha;
    b.data.rho = build_rho(p, g);
    if (p.mu.family == "zero") {
        b.data.mu = ScalarField::constant(g, 0.0);
    } else if (p.mu.family == "trig_poly") {
        const ScalarField raw = p.mu.poly.sample(g);
        const double m = mean(raw);
        b.mu_mean_correction = std::abs(m);
        b.data.mu = raw + (-m);
    } else {
        b.phi_star = p.mu.poly.sample(g);
        b.data.mu = manufactured_mu(*b.phi_star, p.alpha, b.data.rho);
    }
    b.data.A = p.A ? *p.A : integral(exp(-1.0 * *b.phi_star));
    try {
        b.data.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("problem: ") + e.what());
    }
    return b;
}

ContinuationOptions continuation_options(const SolverConfig& s) {
    ContinuationOptions c;
    c.dt0 = s.dt0;
    c.dt_min = s.dt_min;
    c.dt_max = s.dt_max;
    c.easy_iterations = s.easy_iterations;
    c.reverse = s.direction == "reverse";
    c.check_delta0 = s.check_delta0;
    c.newton.tol = s.tol_newton;
    c.newton.max_iterations = s.max_newton;
    c.newton.max_halvings = s.max_halvings;
    c.newton.probe_kernel = s.probe_kernel;
    c.newton.linear.gmres.tol = s.tol_lin;
    c.newton.linear.gmres.restart = s.gmres_restart;
    c.newton.linear.gmres.max_iterations = s.gmres_max_iterations;
    return c;
}

}  // namespace fuyau
