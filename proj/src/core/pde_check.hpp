#pragma once

#include <vector>

#include "godunov.hpp"
#include "hydro.hpp"
#include "init_data.hpp"
#include "speed_field.hpp"

namespace th {

// ---- pointwise Hamilton-Jacobi residuals ------------------------------------

struct ResidualOptions {
    double delta = 1e-3;        // centered-difference step
    double diff_rel_tol = 5e-3; // Delta vs Delta/2 agreement => "differentiable"
    double kink_rel_tol = 2e-2; // forward vs backward slope agreement (catches kinks)
    double env_tol = 1e-9;      // envelope gap => c~ continuity
};

struct ResidualSample {
    double x = 0.0, t = 0.0;
    double residual = 0.0;
    int excluded = 0; // 0 included, 1 non-differentiable, 2 c~ discontinuous
};

struct ResidualReport {
    std::vector<ResidualSample> samples;
    double median_abs = 0.0;     // over included points
    double excluded_fraction = 0.0;
    int included = 0;
};

// R = v_t + c~(x,-v) v_x (1 - v_x) at numerically differentiable points that
// are continuity points of c~(x, -v).
ResidualReport hj_residual(HydroSolver& solver, const std::vector<std::pair<double, double>>& pts,
                           ResidualOptions opt = {});

// ---- envelope-selected viscosity falsification -------------------------------

struct ViscosityOptions {
    double radius = 0.02;   // touching neighbourhood radius
    double tol = 0.02;      // inequality slack
    int perturbations = 50; // random test functions per point
    uint64_t seed = 7;
};

struct ViscosityReport {
    int points = 0;
    int touching_above = 0;   // valid test functions found (max points)
    int touching_below = 0;
    int sub_violations = 0;   // phi_t + H_low(phi_x) > tol at a max point
    int super_violations = 0; // phi_t + H_up(phi_x) < -tol at a min point
    int inconclusive = 0;     // no touching function found
    bool ok() const { return sub_violations == 0 && super_violations == 0; }
};

ViscosityReport viscosity_spot_check(HydroSolver& solver,
                                     const std::vector<std::pair<double, double>>& pts,
                                     ViscosityOptions opt = {});

// ---- weak form of the conservation law ---------------------------------------

// Smooth compactly supported bump phi(x,t) = ((1-u^2)^3 (1-s^2)^3)+ scaled to
// the box [x0-wx, x0+wx] x [t0-wt, t0+wt].
struct TestBump {
    double x0 = 0.0, wx = 1.0, t0 = 0.5, wt = 0.5;
    double value(double x, double t) const;
    double dx(double x, double t) const;
    double dt(double x, double t) const;
};

// Integral defect of rho_t + (c~(x) f(rho))_x = 0 against phi, using the
// trajectory snapshots (trapezoid in t, midpoint in x).
double weak_form_defect(const GodunovRun& run, const InitialData& init, const TestBump& phi);
// Same quadrature for an arbitrary snapshot stack on the same mesh.
double weak_form_defect(const std::vector<std::pair<double, std::vector<double>>>& snaps,
                        const std::vector<double>& cell_c, double a, double dx,
                        const InitialData& init, const TestBump& phi);

// ---- maximal-current principle -----------------------------------------------

struct CurrentComparison {
    std::vector<double> x;
    std::vector<double> scheme_current;      // int_0^t G(x, lambda) ds (interface bookkeeping)
    std::vector<double> variational_current; // v0(x) - v(x,t): the exact time integral
    std::vector<double> variational_trapezoid; // trapezoid of G(x, rho(x,s)), diagnostic
    double max_excess = 0.0;                 // max(scheme - variational), should be <= tol
    int near_equal = 0;                      // |difference| <= tol (uniqueness regime)
    bool ok(double tol) const { return max_excess <= tol; }
};

CurrentComparison maximal_current_check(const GodunovRun& run, HydroSolver& solver,
                                        const std::vector<double>& xs, double t,
                                        int time_slices = 17, double tol = 2e-2);

} // namespace th
