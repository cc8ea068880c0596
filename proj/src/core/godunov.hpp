#pragma once

#include <vector>

#include "init_data.hpp"
#include "speed_field.hpp"

namespace th {

inline double tasep_flux(double rho) { return rho * (1.0 - rho); }

// Supply-demand splitting of the unimodal flux c*f(rho) at theta = 1/2.
double flux_demand(double c, double rho);
double flux_supply(double c, double rho);
double interface_flux(double c_left, double rho_left, double c_right, double rho_right);

struct GodunovOptions {
    double cfl = 0.5;
    bool record_all_steps = false; // snapshot every step (weak-form studies)
};

struct GodunovRun {
    double a = 0.0, b = 0.0, dx = 0.0, dt = 0.0;
    int steps = 0;
    std::vector<double> cell_c;     // c~ sampled at cell centres
    std::vector<double> rho;        // final cell averages
    std::vector<double> flux_int;   // per interface: int_0^T F dt (scheme bookkeeping)
    std::vector<std::pair<double, std::vector<double>>> snapshots;
    double mass_defect_max = 0.0;   // per-step conservation defect (should be ~1e-12)
    double overshoot_max = 0.0;     // distance of cell values outside [0,1]
    double cell_center(int i) const { return a + (i + 0.5) * dx; }
};

// Explicit supply-demand scheme for rho_t + (c~(x) f(rho))_x = 0 on [a,b]
// with outflow boundaries. The field must be spatial-only.
GodunovRun godunov_run(const FieldPtr& c_tilde, const InitialData& init, double a, double b,
                       double horizon, double dx, const std::vector<double>& snap_times,
                       GodunovOptions opt = {});

} // namespace th
