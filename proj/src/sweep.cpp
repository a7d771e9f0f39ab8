#include "mzi/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "mzi/detail/parallel.hpp"
#include "mzi/fock_oracle.hpp"
#include "mzi/version.hpp"

namespace mzi {

namespace {

constexpr double kParityTol = 1e-8;
constexpr double kQfiTol = 1e-7;

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

std::string kind_name(StateKind k) {
    switch (k) {
        case StateKind::Plain: return "plain";
        case StateKind::Added: return "added";
        default: return "subtracted";
    }
}

std::string axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::Phi: return "phi";
        case SweepAxis::TotalNbar: return "total_nbar";
        case SweepAxis::R: return "r";
        default: return "ops";
    }
}

std::string constraint_name(Constraint c) {
    switch (c) {
        case Constraint::None: return "none";
        case Constraint::FixNbarSplit: return "fix_nbar_split";
        case Constraint::FixNbarSqueezed: return "fix_nbar_squeezed";
        default: return "fix_r";
    }
}

// Scenario for one axis value; throws on unresolvable constraints and the
// caller turns that into a tagged row.
struct RowSetup {
    Scenario sc;
    double phi;
};

RowSetup setup_row(const SweepConfig& cfg, double value) {
    Scenario sc = cfg.base;
    double phi = cfg.phi;
    switch (cfg.axis) {
        case SweepAxis::Phi:
            phi = value;
            if (cfg.target_nbar)
                sc.squeezed.r =
                    solve_r_for_nbar(sc.squeezed.kind, sc.squeezed.ops, *cfg.target_nbar);
            break;
        case SweepAxis::TotalNbar: {
            const StateKind kind = sc.squeezed.kind;
            const int ops = sc.squeezed.ops;
            if (cfg.constraint == Constraint::FixNbarSplit) {
                sc.squeezed.r = solve_r_for_nbar(kind, ops, value / 2.0);
                sc.nz = value / 2.0;
            } else if (cfg.constraint == Constraint::FixNbarSqueezed) {
                const double nb = *cfg.target_nbar;
                sc.squeezed.r = solve_r_for_nbar(kind, ops, nb);
                sc.nz = value - nb;
                if (sc.nz < 0.0)
                    throw std::domain_error("total photon number below the squeezed-port mean");
            } else {  // FixR
                const double nb = mean_photon_number(sc.squeezed);
                sc.nz = value - nb;
                if (sc.nz < 0.0)
                    throw std::domain_error("total photon number below the squeezed-port mean");
            }
            break;
        }
        case SweepAxis::R:
            sc.squeezed.r = value;
            break;
        case SweepAxis::Ops: {
            int ops = int(std::llround(value));
            if (ops < 0) throw std::domain_error("negative ops on the axis");
            sc.squeezed.ops = ops;
            if (cfg.target_nbar)
                sc.squeezed.r = solve_r_for_nbar(sc.squeezed.kind, ops, *cfg.target_nbar);
            break;
        }
    }
    return RowSetup{sc, phi};
}

ResultRow evaluate_row(const SweepConfig& cfg, double value) {
    ResultRow row;
    row.axis_value = value;
    try {
        RowSetup rs = setup_row(cfg, value);
        row.phi = rs.phi;
        row.nbar = mean_photon_number(rs.sc.squeezed);
        ParityPoint p = parity_phase_slope(rs.sc, rs.phi);
        row.parity = p.value;
        row.slope = p.slope;
        SensitivityPoint s = sensitivity_point(rs.sc, rs.phi, cfg.variant);
        row.delta_phi = s.delta_phi;
        row.snl = s.snl;
        row.hl = s.hl;
        row.qfi = s.qfi;
        row.crb = s.crb;
        if (cfg.verify) {
            auto [ca, cb] = recommended_cutoffs(rs.sc);
            TwoModeFockState in = build_input_state(rs.sc, ca, cb);
            row.oracle_qfi = 4.0 * j2_variance_oracle(in);
            row.oracle_parity = parity_oracle(apply_interferometer(in, rs.phi));
            row.has_oracle = true;
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

std::vector<double> sweep_grid(double start, double stop, int count, bool log_spacing) {
    if (count < 2) throw std::invalid_argument("sweep_grid: count must be >= 2");
    if (!(start < stop)) throw std::invalid_argument("sweep_grid: start must be < stop");
    if (log_spacing && !(start > 0.0))
        throw std::invalid_argument("sweep_grid: log spacing needs start > 0");
    std::vector<double> g(static_cast<size_t>(count));
    if (log_spacing) {
        const double la = std::log(start), lb = std::log(stop);
        for (int i = 0; i < count; ++i)
            g[size_t(i)] = std::exp(la + (lb - la) * double(i) / double(count - 1));
    } else {
        for (int i = 0; i < count; ++i)
            g[size_t(i)] = start + (stop - start) * double(i) / double(count - 1);
    }
    g.front() = start;
    g.back() = stop;
    return g;
}

void validate_config(const SweepConfig& cfg) {
    if (cfg.count < 2) throw std::invalid_argument("config: count must be >= 2");
    if (!(cfg.start < cfg.stop)) throw std::invalid_argument("config: start must be < stop");
    if (cfg.log_spacing && !(cfg.start > 0.0))
        throw std::invalid_argument("config: log spacing needs start > 0");
    if (cfg.axis == SweepAxis::TotalNbar) {
        if (cfg.constraint == Constraint::None)
            throw std::invalid_argument("config: total_nbar sweeps need a constraint");
        if (cfg.constraint == Constraint::FixNbarSqueezed && !cfg.target_nbar)
            throw std::invalid_argument("config: fix_nbar_squeezed needs target_nbar");
        if (cfg.constraint == Constraint::FixR && cfg.target_nbar)
            throw std::invalid_argument("config: fix_r uses the configured r, not target_nbar");
        if (cfg.constraint == Constraint::FixNbarSplit && cfg.target_nbar)
            throw std::invalid_argument("config: fix_nbar_split resolves r per row; drop target_nbar");
    } else {
        if (cfg.constraint != Constraint::None)
            throw std::invalid_argument("config: constraints apply to total_nbar sweeps only");
    }
    if (cfg.axis == SweepAxis::R && cfg.target_nbar)
        throw std::invalid_argument("config: r sweeps cannot pin target_nbar");
    if (cfg.axis == SweepAxis::Ops && cfg.base.squeezed.kind == StateKind::Plain)
        throw std::invalid_argument("config: ops sweeps need an added or subtracted family");
    if (!(cfg.base.nz >= 0.0)) throw std::invalid_argument("config: nz must be >= 0");
}

SweepResult run_scenario_sweep(const SweepConfig& cfg) {
    validate_config(cfg);
    std::vector<double> grid = sweep_grid(cfg.start, cfg.stop, cfg.count, cfg.log_spacing);

    SweepResult result;
    result.config = cfg;
    result.rows.resize(grid.size());
    detail::parallel_for(grid.size(),
                         [&](size_t i) { result.rows[i] = evaluate_row(cfg, grid[i]); });

    bool any_error = false;
    for (const ResultRow& row : result.rows) {
        if (!row.error.empty()) {
            any_error = true;
            continue;
        }
        if (row.has_oracle) {
            if (std::isfinite(row.parity))
                result.max_parity_residual =
                    std::max(result.max_parity_residual, std::fabs(row.parity - row.oracle_parity));
            if (std::isfinite(row.qfi))
                result.max_qfi_residual =
                    std::max(result.max_qfi_residual, std::fabs(row.qfi - row.oracle_qfi));
        }
    }
    result.ok = !any_error &&
                (!cfg.verify ||
                 (result.max_parity_residual <= kParityTol && result.max_qfi_residual <= kQfiTol));
    return result;
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "axis_value,phi,nbar,parity,slope,delta_phi,snl,hl,qfi,crb";
    if (result.config.verify) os << ",oracle_parity,oracle_qfi,parity_residual,qfi_residual";
    os << ",error\n";
    for (const ResultRow& r : result.rows) {
        os << fmt(r.axis_value) << ',' << fmt(r.phi) << ',' << fmt(r.nbar) << ','
           << fmt(r.parity) << ',' << fmt(r.slope) << ',' << fmt(r.delta_phi) << ','
           << fmt(r.snl) << ',' << fmt(r.hl) << ',' << fmt(r.qfi) << ',' << fmt(r.crb);
        if (result.config.verify) {
            if (r.has_oracle)
                os << ',' << fmt(r.oracle_parity) << ',' << fmt(r.oracle_qfi) << ','
                   << fmt(std::fabs(r.parity - r.oracle_parity)) << ','
                   << fmt(std::fabs(r.qfi - r.oracle_qfi));
            else
                os << ",,,,";
        }
        os << ',' << sanitize(r.error) << '\n';
    }
    return os.str();
}

std::string to_manifest_json(const SweepResult& result) {
    const SweepConfig& cfg = result.config;
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["label"] = cfg.label;
    j["scenario"]["kind"] = kind_name(cfg.base.squeezed.kind);
    j["scenario"]["ops"] = cfg.base.squeezed.ops;
    if (cfg.target_nbar)
        j["scenario"]["target_nbar"] = *cfg.target_nbar;
    else
        j["scenario"]["r"] = cfg.base.squeezed.r;
    j["scenario"]["nz"] = cfg.base.nz;
    j["scenario"]["theta"] = cfg.base.theta;
    j["axis"] = axis_name(cfg.axis);
    j["start"] = cfg.start;
    j["stop"] = cfg.stop;
    j["count"] = cfg.count;
    j["spacing"] = cfg.log_spacing ? "log" : "linear";
    j["constraint"] = constraint_name(cfg.constraint);
    j["variant"] = cfg.variant == Variant::Literal ? "literal" : "series";
    j["verify"] = cfg.verify;
    j["phi"] = cfg.phi;
    j["rows"] = result.rows.size();
    if (cfg.verify) {
        j["max_parity_residual"] = result.max_parity_residual;
        j["max_qfi_residual"] = result.max_qfi_residual;
    }
    j["ok"] = result.ok;
    return j.dump(2) + "\n";
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_num(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw std::invalid_argument("config: bad boolean for '" + key + "': " + v);
}

} // namespace

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    bool have_kind = false, have_axis = false, have_start = false, have_stop = false,
         have_count = false, have_r = false;
    double r_value = 0.0;
    int ops = 0;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (size_t h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got: " + line);
        std::string key = lower(trim(line.substr(0, eq)));
        std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw std::invalid_argument("config: empty value for '" + key + "'");

        if (key == "kind") {
            std::string k = lower(val);
            if (k == "plain") cfg.base.squeezed.kind = StateKind::Plain;
            else if (k == "added") cfg.base.squeezed.kind = StateKind::Added;
            else if (k == "subtracted") cfg.base.squeezed.kind = StateKind::Subtracted;
            else throw std::invalid_argument("config: unknown kind: " + val);
            have_kind = true;
        } else if (key == "ops") {
            ops = int(parse_num(key, val));
        } else if (key == "r") {
            r_value = parse_num(key, val);
            have_r = true;
        } else if (key == "target_nbar") {
            cfg.target_nbar = parse_num(key, val);
        } else if (key == "nz") {
            cfg.base.nz = parse_num(key, val);
        } else if (key == "theta") {
            cfg.base.theta = parse_num(key, val);
        } else if (key == "axis") {
            std::string a = lower(val);
            if (a == "phi") cfg.axis = SweepAxis::Phi;
            else if (a == "total_nbar") cfg.axis = SweepAxis::TotalNbar;
            else if (a == "r") cfg.axis = SweepAxis::R;
            else if (a == "ops") cfg.axis = SweepAxis::Ops;
            else throw std::invalid_argument("config: unknown axis: " + val);
            have_axis = true;
        } else if (key == "start") {
            cfg.start = parse_num(key, val);
            have_start = true;
        } else if (key == "stop") {
            cfg.stop = parse_num(key, val);
            have_stop = true;
        } else if (key == "count") {
            cfg.count = int(parse_num(key, val));
            have_count = true;
        } else if (key == "spacing") {
            std::string s = lower(val);
            if (s == "linear") cfg.log_spacing = false;
            else if (s == "log") cfg.log_spacing = true;
            else throw std::invalid_argument("config: spacing must be linear or log");
        } else if (key == "constraint") {
            std::string c = lower(val);
            if (c == "none") cfg.constraint = Constraint::None;
            else if (c == "fix_nbar_split") cfg.constraint = Constraint::FixNbarSplit;
            else if (c == "fix_nbar_squeezed") cfg.constraint = Constraint::FixNbarSqueezed;
            else if (c == "fix_r") cfg.constraint = Constraint::FixR;
            else throw std::invalid_argument("config: unknown constraint: " + val);
        } else if (key == "variant") {
            std::string v = lower(val);
            if (v == "literal") cfg.variant = Variant::Literal;
            else if (v == "series") cfg.variant = Variant::SeriesConsistent;
            else throw std::invalid_argument("config: variant must be literal or series");
        } else if (key == "verify") {
            cfg.verify = parse_bool(key, val);
        } else if (key == "phi") {
            cfg.phi = parse_num(key, val);
        } else if (key == "label") {
            cfg.label = val;
        } else {
            throw std::invalid_argument("config: unknown key: " + key);
        }
    }

    if (!have_kind) throw std::invalid_argument("config: missing kind");
    if (!have_axis) throw std::invalid_argument("config: missing axis");
    if (!have_start || !have_stop || !have_count)
        throw std::invalid_argument("config: missing start/stop/count");
    if (have_r && cfg.target_nbar)
        throw std::invalid_argument("config: give either r or target_nbar, not both");
    cfg.base.squeezed.ops = ops;
    cfg.base.squeezed.r = have_r ? r_value : 0.0;
    // structural checks on the assembled configuration
    StateSpec checked(cfg.base.squeezed.kind, cfg.base.squeezed.r, cfg.base.squeezed.ops);
    cfg.base.squeezed = checked;
    validate_config(cfg);
    return cfg;
}

} // namespace mzi
