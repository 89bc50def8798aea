#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wcdd/model.hpp"
#include "wcdd/spectrum.hpp"
#include "wcdd/stability.hpp"

namespace wcdd {

/// One sweep axis. Accepted names:
///  - circuit mode: any weight slot of the base scheme (w_E1E2, ...), or the
///    basal-ganglia aliases W_GS, W_SG, W_CS, W_SC, W_CC, which apply the
///    circuit's sign conventions (e.g. W_SC sets w_E2E1 = -W_SC; W_CC sets
///    both w_E2I2 = -W_CC and w_I2E2 = +W_CC)
///  - raw mode: "alpha" and "beta"
struct AxisSpec {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    int steps = 2;

    double value(int i) const { return min + (max - min) * i / (steps - 1); }
};

struct SweepConfig {
    /// Circuit under sweep; empty selects raw (alpha, beta) mode.
    std::optional<NetworkSpec> base;
    /// Time scale used to express raw-mode delays in ms (T = tau_tilde * tau_bar).
    double raw_tau_bar_ms = 1.0;

    AxisSpec axis1, axis2;
    std::vector<Kernel> kernels{Kernel::Dirac};
    int k_max = 8;
    SolverOpts solver{};
    int threads = 0;  // 0 = hardware concurrency

    bool raw_mode() const { return !base.has_value(); }
    void validate() const;
};

struct KernelCellResult {
    Kernel kernel = Kernel::Dirac;
    bool stable_all_delays = false;
    std::optional<double> tstar_ms;  // first crossing
    std::optional<std::pair<double, double>> window_ms;
    std::optional<double> f_hz;  // onset frequency at the first crossing
    std::optional<Band> band;
};

struct SweepCell {
    double p1 = 0.0, p2 = 0.0;
    bool solved = false;
    std::string error;  // nonempty when the cell pipeline failed
    double alpha = 0.0, beta = 0.0;
    RegionClass region{};
    bool branch_jump = false;  // warm-start equilibrium differs from the default pick
    std::vector<KernelCellResult> kernels;
};

struct SweepGrid {
    AxisSpec axis1, axis2;
    std::vector<Kernel> kernels;
    bool raw = false;
    double tau_bar_ms = 1.0;
    std::vector<SweepCell> cells;  // row-major, axis1 outer

    const SweepCell& at(int i1, int i2) const { return cells[i1 * axis2.steps + i2]; }
};

/// Per-cell pipeline equilibrium -> (alpha, beta) -> region -> critical delays
/// -> onset band. Equilibria are re-solved per cell (multi-start plus a warm
/// start from the row neighbor); failed cells are marked, not dropped. Rows
/// run in parallel, cells within a row serially (warm-start chain).
SweepGrid run_sweep(const SweepConfig& cfg);

/// CSV columns: p1,p2,alpha,beta,region,zone,kernel,tstar_ms,tminus_ms,
/// tplus_ms,f_hz,band. One row per cell per kernel, kernel innermost,
/// row-major cell order, empty fields where not applicable, %.9g floats.
void export_grid_csv(const SweepGrid& grid, std::ostream& os);

std::string grid_to_json(const SweepGrid& grid);
SweepGrid grid_from_json(const std::string& text);

/// format is "csv" or "json".
void export_grid(const SweepGrid& grid, const std::string& format, const std::string& path);

}  // namespace wcdd
