#include "godunov.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace th {

double flux_demand(double c, double rho) {
    return rho < 0.5 ? c * tasep_flux(rho) : 0.25 * c;
}

double flux_supply(double c, double rho) {
    return rho > 0.5 ? c * tasep_flux(rho) : 0.25 * c;
}

double interface_flux(double c_left, double rho_left, double c_right, double rho_right) {
    return std::min(flux_demand(c_left, rho_left), flux_supply(c_right, rho_right));
}

GodunovRun godunov_run(const FieldPtr& c_tilde, const InitialData& init, double a, double b,
                       double horizon, double dx, const std::vector<double>& snap_times,
                       GodunovOptions opt) {
    require(b > a && dx > 0.0 && horizon > 0.0, errc::invalid_argument,
            "godunov_run: bad domain, dx or horizon");
    require(c_tilde->kind() != SpeedField::Kind::general, errc::invalid_argument,
            "godunov_run needs a spatial-only speed function");
    GodunovRun run;
    run.a = a;
    run.b = b;
    run.dx = dx;
    int n = static_cast<int>(std::lround((b - a) / dx));
    require(n >= 4 && std::fabs(a + n * dx - b) < 1e-9, errc::invalid_argument,
            "godunov_run: (b-a) must be a multiple of dx");
    run.cell_c.resize(n);
    run.rho.resize(n);
    double c_max = 0.0;
    for (int i = 0; i < n; ++i) {
        double xc = run.cell_center(i);
        run.cell_c[i] = c_tilde->value(xc, 0.0);
        run.rho[i] = init.rho0(xc);
        c_max = std::max(c_max, run.cell_c[i]);
    }
    double dt0 = opt.cfl * dx / c_max;
    run.steps = std::max(1, static_cast<int>(std::ceil(horizon / dt0)));
    run.dt = horizon / run.steps;
    run.flux_int.assign(n + 1, 0.0);

    std::vector<double> flux(n + 1), next(n);
    std::vector<double> pending = snap_times;
    std::sort(pending.begin(), pending.end());
    size_t snap_idx = 0;
    auto record = [&](double t) {
        while (snap_idx < pending.size() && pending[snap_idx] <= t + 1e-12) {
            run.snapshots.emplace_back(pending[snap_idx], run.rho);
            ++snap_idx;
        }
    };
    record(0.0);
    if (opt.record_all_steps) run.snapshots.emplace_back(0.0, run.rho);

    for (int s = 0; s < run.steps; ++s) {
        for (int k = 0; k <= n; ++k) {
            // outflow: ghost cells copy the adjacent interior cell
            int il = std::max(k - 1, 0), ir = std::min(k, n - 1);
            flux[k] = interface_flux(run.cell_c[il], run.rho[il], run.cell_c[ir], run.rho[ir]);
        }
        double mass_before = 0.0, mass_after = 0.0;
        for (int i = 0; i < n; ++i) {
            mass_before += run.rho[i];
            next[i] = run.rho[i] - run.dt / dx * (flux[i + 1] - flux[i]);
            mass_after += next[i];
            run.overshoot_max =
                std::max({run.overshoot_max, -next[i], next[i] - 1.0});
        }
        for (int k = 0; k <= n; ++k) run.flux_int[k] += run.dt * flux[k];
        double defect =
            (mass_after - mass_before) * dx + run.dt * (flux[n] - flux[0]);
        run.mass_defect_max = std::max(run.mass_defect_max, std::fabs(defect));
        run.rho.swap(next);
        double t = (s + 1) * run.dt;
        record(t);
        if (opt.record_all_steps) run.snapshots.emplace_back(t, run.rho);
    }
    return run;
}

} // namespace th
