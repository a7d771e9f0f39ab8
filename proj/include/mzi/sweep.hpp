#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mzi/sensitivity.hpp"
#include "mzi/states.hpp"

namespace mzi {

enum class SweepAxis { Phi, TotalNbar, R, Ops };

// How scenario parameters track the axis on total-photon-number sweeps:
//   FixNbarSplit    both ports carry N/2 (squeezing re-solved per row)
//   FixNbarSqueezed squeezed-port mean pinned to its configured value,
//                   coherent part takes the remainder
//   FixR            squeezing parameter pinned, coherent part takes the
//                   remainder
enum class Constraint { None, FixNbarSplit, FixNbarSqueezed, FixR };

struct SweepConfig {
    Scenario base;
    // set when the config pinned the squeezed port by mean photon number
    std::optional<double> target_nbar;
    SweepAxis axis = SweepAxis::Phi;
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
    bool log_spacing = false;
    Constraint constraint = Constraint::None;
    Variant variant = Variant::SeriesConsistent;
    bool verify = false;
    double phi = 0.0;  // probe phase for non-phi axes
    std::string label;
};

struct ResultRow {
    double axis_value = 0.0;
    double phi = 0.0;
    double nbar = 0.0;  // squeezed-port mean photon number after constraints
    double parity = 0.0;
    double slope = 0.0;
    double delta_phi = 0.0;
    double snl = 0.0;
    double hl = 0.0;
    double qfi = 0.0;
    double crb = 0.0;
    bool has_oracle = false;
    double oracle_parity = 0.0;
    double oracle_qfi = 0.0;
    std::string error;  // row-level failure tag, empty when the row is good
};

struct SweepResult {
    SweepConfig config;
    std::vector<ResultRow> rows;
    double max_parity_residual = 0.0;  // only meaningful with verify
    double max_qfi_residual = 0.0;
    bool ok = true;  // no row errors, residuals within tolerance
};

// Throws std::invalid_argument on malformed configs (bad ranges, axis and
// constraint mismatch, log spacing across zero and so on).
void validate_config(const SweepConfig& config);

// Flat key=value text, '#' comments. Keys: kind, ops, r | target_nbar, nz,
// theta, axis, start, stop, count, spacing, constraint, variant, verify,
// phi, label. Exactly one of r / target_nbar.
SweepConfig parse_sweep_config(const std::string& text);

// Rows are computed in a worker pool (size from the MZI_THREADS environment
// variable, default = hardware concurrency) and assembled in axis order, so
// output is deterministic regardless of thread count.
SweepResult run_scenario_sweep(const SweepConfig& config);

// CSV with a snake_case header, shortest round-trip float formatting, the
// literal "inf" for divergent delta_phi.
std::string to_csv(const SweepResult& result);

// JSON manifest from which every CSV number can be regenerated.
std::string to_manifest_json(const SweepResult& result);

std::vector<double> sweep_grid(double start, double stop, int count, bool log_spacing);

} // namespace mzi
