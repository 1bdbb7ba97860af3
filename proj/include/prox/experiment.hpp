#ifndef PROX_EXPERIMENT_HPP
#define PROX_EXPERIMENT_HPP

#include "prox/curves.hpp"
#include "prox/generate.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace prox {

/// Guardrails for exhaustive work on one desk machine, overridable.
constexpr size_t kMaxNQuadruples = 1024;
constexpr size_t kMaxNAccounting = 64;

struct ExperimentConfig {
    std::vector<Rational> phi_coeffs;  // c0..cd, deg >= 3
    GenSpec gen;
    std::vector<size_t> n_values;
    long long s = 0;  // 0: use the default 8*deg(phi)+1
    long long t = 0;  // 0: derive from |D|; -1: force t = n; else fixed
    uint64_t seed = 1;
    bool accounting = true;
    bool allow_large = false;
    double eps = 0.0;
    std::string output;  // empty: stdout

    UniPoly phi() const { return UniPoly(phi_coeffs); }

    long long effective_s() const {
        return s > 0 ? s : 8 * static_cast<long long>(phi().degree()) + 1;
    }

    void validate() const {
        UniPoly p(phi_coeffs);
        if (p.degree() < 3) throw std::invalid_argument("config: deg(phi) must be >= 3");
        if (n_values.empty()) throw std::invalid_argument("config: need at least one n");
        for (size_t i = 0; i < n_values.size(); ++i) {
            if (n_values[i] < 1) throw std::invalid_argument("config: n values must be positive");
            if (i > 0 && n_values[i] <= n_values[i - 1])
                throw std::invalid_argument("config: n values must be increasing");
        }
        if (s < 0) throw std::invalid_argument("config: s must be >= 1 (or 0 for the default)");
        if (t < -1) throw std::invalid_argument("config: t must be -1 (n), 0 (auto), or >= 1");
        if (eps < 0) throw std::invalid_argument("config: eps must be nonnegative");
    }
};

/// Flat `key = value` config text; `#` starts a comment. phi is a bracketed
/// coefficient list, n a comma-separated list.
inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    auto split_list = [&](std::string s) {
        if (!s.empty() && s.front() == '[') {
            if (s.back() != ']') throw std::invalid_argument("config: unbalanced brackets");
            s = s.substr(1, s.size() - 2);
        }
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    };
    auto parse_bool = [](const std::string& v) {
        if (v == "true" || v == "on" || v == "1") return true;
        if (v == "false" || v == "off" || v == "0") return false;
        throw std::invalid_argument("config: bad boolean value: " + v);
    };

    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "phi") {
            cfg.phi_coeffs.clear();
            for (const auto& tok : split_list(val)) cfg.phi_coeffs.push_back(parse_rational(tok));
        } else if (key == "n") {
            cfg.n_values.clear();
            for (const auto& tok : split_list(val)) cfg.n_values.push_back(std::stoull(tok));
        } else if (key == "generator") {
            cfg.gen.kind = parse_gen_kind(val);
        } else if (key == "start") {
            cfg.gen.start = parse_rational(val);
        } else if (key == "step") {
            cfg.gen.step = parse_rational(val);
        } else if (key == "base") {
            cfg.gen.base = parse_rational(val);
        } else if (key == "ratio") {
            cfg.gen.ratio = parse_rational(val);
        } else if (key == "lo") {
            cfg.gen.lo = std::stoll(val);
        } else if (key == "hi") {
            cfg.gen.hi = std::stoll(val);
        } else if (key == "file") {
            cfg.gen.file = val;
        } else if (key == "s") {
            cfg.s = std::stoll(val);
        } else if (key == "t") {
            cfg.t = (val == "n") ? -1 : std::stoll(val);
        } else if (key == "seed") {
            cfg.seed = std::stoull(val);
        } else if (key == "accounting") {
            cfg.accounting = parse_bool(val);
        } else if (key == "allow_large") {
            cfg.allow_large = parse_bool(val);
        } else if (key == "eps") {
            cfg.eps = std::stod(val);
        } else if (key == "output") {
            cfg.output = val;
        } else {
            throw std::invalid_argument("config: unknown key: " + key);
        }
    }
    cfg.validate();
    return cfg;
}

struct ExperimentRow {
    size_t n = 0;
    size_t d_size = 0;
    size_t t = 0;
    long long s = 0;
    long long strict_q = 0;
    long long relaxed_q = 0;
    size_t p_size = 0;
    size_t family_size = 0;
    size_t gamma0_size = 0;
    size_t residual_size = 0;
    long long incidence_total = 0;
    Rational heavy_slack;
    Rational step_c_slack;
    bool step_c_holds = false;
    bool accounting_done = false;
    bool exceptional_holds = false;
    bool residual_holds = false;
    double sz_total = 0.0;
    double wall_ms = 0.0;
    std::string note;  // per-n failure or skip reason; empty on clean rows
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
};

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res;
    UniPoly phi = cfg.phi();
    long long s = cfg.effective_s();
    for (size_t n : cfg.n_values) {
        ExperimentRow row;
        row.n = n;
        row.s = s;
        auto t0 = std::chrono::steady_clock::now();
        try {
            if (n > kMaxNQuadruples && !cfg.allow_large)
                throw std::invalid_argument("refused: n > " + std::to_string(kMaxNQuadruples) +
                                            " needs allow_large");
            std::vector<Rational> set = generate_sets(cfg.gen, n, cfg.seed);
            GroundData probe(set, set, set, phi, s, 1);
            row.d_size = image_set(probe).size();
            if (cfg.t == 0)
                row.t = choose_t(n, row.d_size, s);
            else
                row.t = cfg.t == -1 ? n : static_cast<size_t>(cfg.t);
            GroundData g(set, set, set, phi, s, row.t);
            LevelSets ls = level_sets(g);
            QuadrupleStats qs = count_Q(g, ls);
            row.strict_q = qs.strict_ordered;
            row.relaxed_q = qs.relaxed_ordered;
            LowerChainReport chain = verify_lower_chain(g, ls, qs);
            row.heavy_slack = chain.heavy_slack;
            row.step_c_slack = chain.step_c_slack;
            row.step_c_holds = chain.step_c_holds;
            if (cfg.accounting) {
                if (n > kMaxNAccounting && !cfg.allow_large) {
                    row.note = "accounting skipped: n > " + std::to_string(kMaxNAccounting);
                } else {
                    UpperAccounting acc = verify_upper_accounting(g, cfg.eps);
                    row.accounting_done = true;
                    row.p_size = acc.p_size;
                    row.family_size = acc.family_size;
                    row.gamma0_size = acc.gamma0_size;
                    row.residual_size = acc.residual_size;
                    row.incidence_total = acc.incidence_total;
                    row.exceptional_holds = acc.exceptional_holds;
                    row.residual_holds = acc.residual_holds;
                    row.sz_total = acc.sz.total;
                    if (!acc.multiplicity.ok()) row.note = acc.multiplicity.violations.front();
                }
            }
        } catch (const std::exception& e) {
            row.note = e.what();
        }
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        res.rows.push_back(std::move(row));
    }
    return res;
}

inline std::string format_approx(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

/// Fixed column order; exact values as integers or "p/q", floats only in the
/// *_approx columns. wall_ms_approx is last before note so timing-insensitive
/// comparison can cut it away.
inline const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "n",           "d_size",          "t",
        "s",           "strict_q",        "relaxed_q",
        "p_size",      "family_size",     "gamma0_size",
        "residual_size", "incidence_total", "heavy_slack",
        "step_c_slack", "step_c_holds",   "accounting_done",
        "exceptional_holds", "residual_holds", "sz_total_approx",
        "wall_ms_approx", "note"};
    return cols;
}

inline std::string to_csv(const ExperimentResult& res) {
    std::ostringstream os;
    const auto& cols = csv_columns();
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const ExperimentRow& r : res.rows) {
        os << r.n << "," << r.d_size << "," << r.t << "," << r.s << "," << r.strict_q << ","
           << r.relaxed_q << "," << r.p_size << "," << r.family_size << "," << r.gamma0_size
           << "," << r.residual_size << "," << r.incidence_total << "," << to_string(r.heavy_slack)
           << "," << to_string(r.step_c_slack) << "," << (r.step_c_holds ? 1 : 0) << ","
           << (r.accounting_done ? 1 : 0) << "," << (r.exceptional_holds ? 1 : 0) << ","
           << (r.residual_holds ? 1 : 0) << "," << format_approx(r.sz_total) << ","
           << format_approx(r.wall_ms) << ",";
        // The note is free text; keep the row parseable.
        for (char c : r.note) os << (c == ',' ? ';' : c);
        os << "\n";
    }
    return os.str();
}

inline ExperimentResult parse_csv(std::istream& in) {
    ExperimentResult res;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("csv: missing header");
    {
        std::ostringstream expect;
        const auto& cols = csv_columns();
        for (size_t i = 0; i < cols.size(); ++i) expect << (i ? "," : "") << cols[i];
        if (line != expect.str()) throw std::invalid_argument("csv: unexpected header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(item);
        while (f.size() < csv_columns().size()) f.emplace_back();  // empty trailing note
        if (f.size() != csv_columns().size()) throw std::invalid_argument("csv: bad row");
        ExperimentRow r;
        r.n = std::stoull(f[0]);
        r.d_size = std::stoull(f[1]);
        r.t = std::stoull(f[2]);
        r.s = std::stoll(f[3]);
        r.strict_q = std::stoll(f[4]);
        r.relaxed_q = std::stoll(f[5]);
        r.p_size = std::stoull(f[6]);
        r.family_size = std::stoull(f[7]);
        r.gamma0_size = std::stoull(f[8]);
        r.residual_size = std::stoull(f[9]);
        r.incidence_total = std::stoll(f[10]);
        r.heavy_slack = parse_rational(f[11]);
        r.step_c_slack = parse_rational(f[12]);
        r.step_c_holds = f[13] == "1";
        r.accounting_done = f[14] == "1";
        r.exceptional_holds = f[15] == "1";
        r.residual_holds = f[16] == "1";
        r.sz_total = std::stod(f[17]);
        r.wall_ms = std::stod(f[18]);
        r.note = f[19];
        res.rows.push_back(std::move(r));
    }
    return res;
}

/// Least-squares slope of log(d_size) against log(n). Descriptive statistic
/// only; nothing downstream consumes it.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
};

inline FitResult fit_exponent(const std::vector<std::pair<size_t, size_t>>& points) {
    std::set<size_t> distinct;
    for (const auto& [n, d] : points) {
        if (n < 1 || d < 1) throw std::invalid_argument("fit_exponent: values must be positive");
        distinct.insert(n);
    }
    if (distinct.size() < 2)
        throw std::invalid_argument("fit_exponent: need at least 2 distinct n values");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double m = static_cast<double>(points.size());
    for (const auto& [n, d] : points) {
        double x = std::log(static_cast<double>(n)), y = std::log(static_cast<double>(d));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    FitResult out;
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.intercept = (sy - out.slope * sx) / m;
    for (const auto& [n, d] : points) {
        double x = std::log(static_cast<double>(n)), y = std::log(static_cast<double>(d));
        out.residuals.push_back(y - (out.slope * x + out.intercept));
    }
    return out;
}

}  // namespace prox

#endif
