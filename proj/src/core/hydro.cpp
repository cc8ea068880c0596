#include "hydro.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "rng.hpp"
#include "util.hpp"

namespace th {

HydroSolver::HydroSolver(FieldPtr c_tilde, InitialData init, double t_max, HydroOptions opt)
    : c_tilde_(std::move(c_tilde)), c_lpp_(unshear(c_tilde_)), init_(std::move(init)),
      opt_(opt), t_max_(t_max) {
    require(t_max_ > 0.0, errc::invalid_argument, "HydroSolver needs t_max > 0");
    quantum_ = opt_.dq / std::pow(4.0, opt_.refine_levels) / 4.0;
    // speed bound over a box comfortably containing every root and level point
    double guess = 8.0 * (1.0 + t_max_) + 4.0;
    Rect box{-guess, -guess, guess, guess};
    r_high_ = c_tilde_->bounds_on(box).second;
}

double HydroSolver::quantize_q(double q) const { return std::round(q / quantum_) * quantum_; }

std::pair<double, double> HydroSolver::truncation(double x, double t) {
    double reach = t * r_high_ + opt_.trunc_margin;
    return {x - reach, x + reach};
}

std::shared_ptr<LevelCurveSolver> HydroSolver::solver_for(double q) {
    {
        std::lock_guard<std::mutex> lock(bank_mutex_);
        auto it = bank_.find(q);
        if (it != bank_.end()) {
            it->second.last_use = ++bank_clock_;
            return it->second.solver;
        }
    }
    // build outside the lock so the warm-up pass can run in parallel;
    // the r-range is trimmed to the x-window this solver will actually serve
    double reach = t_max_ * r_high_ + opt_.trunc_margin + 0.5;
    double r_lo = -reach, r_hi = reach;
    if (x_hint_lo_ <= x_hint_hi_) {
        r_lo = std::max(r_lo, x_hint_lo_ - q - 0.25);
        r_hi = std::min(r_hi, x_hint_hi_ - q + 0.25);
        if (r_hi < r_lo) r_lo = r_hi = 0.5 * (r_lo + r_hi);
    }
    LevelCurveOptions lopt;
    lopt.h = opt_.grid_h;
    lopt.bisect_tol = opt_.bisect_tol;
    Point root{q - init_.v0(q), -init_.v0(q)};
    auto solver = std::make_shared<LevelCurveSolver>(c_lpp_, root, r_lo, r_hi, t_max_, lopt);
    std::lock_guard<std::mutex> lock(bank_mutex_);
    auto [pos, inserted] = bank_.emplace(q, BankEntry{solver, ++bank_clock_});
    if (!inserted) {
        pos->second.last_use = ++bank_clock_;
        return pos->second.solver;
    }
    if (bank_.size() > opt_.bank_cap) {
        // drop the least recently used quarter
        std::vector<uint64_t> uses;
        uses.reserve(bank_.size());
        for (auto& [k, e] : bank_) uses.push_back(e.last_use);
        std::nth_element(uses.begin(), uses.begin() + uses.size() / 4, uses.end());
        uint64_t cut = uses[uses.size() / 4];
        for (auto it = bank_.begin(); it != bank_.end();) {
            if (it->second.last_use <= cut && it->first != q)
                it = bank_.erase(it);
            else
                ++it;
        }
    }
    return solver;
}

double HydroSolver::F(double q, double x, double t) {
    return init_.v0(q) - solver_for(q)->g(x - q, t);
}

void HydroSolver::reserve_x_range(double x_lo, double x_hi) {
    x_hint_lo_ = std::min(x_hint_lo_, x_lo);
    x_hint_hi_ = std::max(x_hint_hi_, x_hi);
}

PointValue HydroSolver::maximize(double x, double t) {
    require(t > 0.0 && t <= t_max_ + 1e-12, errc::invalid_argument,
            "query time outside solver horizon");
    reserve_x_range(x, x);
    auto [q_lo, q_hi] = truncation(x, t);

    std::vector<double> cand;
    for (double q = std::ceil(q_lo / opt_.dq) * opt_.dq; q <= q_hi + 1e-12; q += opt_.dq)
        cand.push_back(quantize_q(q));
    cand.push_back(quantize_q(q_lo));
    cand.push_back(quantize_q(q_hi));
    for (double k : init_.kinks())
        if (k > q_lo && k < q_hi) cand.push_back(k); // exact kink, not quantized
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // scan from the middle outwards so the incumbent prunes the tails early
    std::stable_sort(cand.begin(), cand.end(), [&](double a, double b) {
        return std::fabs(a - x) < std::fabs(b - x);
    });

    double best = -1e300, best_q = cand.front();
    std::vector<std::pair<double, double>> seen; // (q, F)
    auto eval = [&](double q) {
        // F(q) <= v0(q) - beta(x-q); skip candidates that cannot win
        double bound = init_.v0(q) - wedge_floor(x - q);
        if (bound <= best - 1e-12) return;
        double f = F(q, x, t);
        seen.emplace_back(q, f);
        if (f > best) {
            best = f;
            best_q = q;
        }
    };
    for (double q : cand) eval(q);

    double spacing = opt_.dq;
    bool best_is_kink = false;
    for (double k : init_.kinks()) best_is_kink |= (k == best_q);
    for (int level = 1; level <= opt_.refine_levels; ++level) {
        spacing /= 4.0;
        for (int s = -4; s <= 4; ++s) {
            if (s == 0) continue;
            double q = quantize_q(best_q + s * spacing);
            if (q <= q_lo - 1e-12 || q >= q_hi + 1e-12) continue;
            eval(q);
        }
        best_is_kink = false;
        for (double k : init_.kinks()) best_is_kink |= (k == best_q);
        if (best_is_kink) break; // the envelope peaks at a v0 kink; lattice refinement is moot
    }
    if (!best_is_kink) {
        // parabolic polish on the finest lattice
        double fl = F(quantize_q(best_q - spacing), x, t);
        double fr = F(quantize_q(best_q + spacing), x, t);
        double denom = fl - 2.0 * best + fr;
        if (denom < -1e-15) {
            double delta = 0.5 * spacing * (fl - fr) / denom;
            delta = std::clamp(delta, -spacing, spacing);
            double qa = quantize_q(best_q + delta);
            eval(qa);
        }
    }

    PointValue out;
    out.v = best;
    out.qstar = best_q;
    out.gstar = init_.v0(best_q) - best;
    for (auto& [q, f] : seen)
        if (f >= best - opt_.tie_tol && q != best_q) out.ties.push_back(q);
    return out;
}

double HydroSolver::v(double x, double t) { return maximize(x, t).v; }

PointValue HydroSolver::v_detail(double x, double t) { return maximize(x, t); }

Profile HydroSolver::profile(const std::vector<double>& xs, double t) {
    require(!xs.empty(), errc::invalid_argument, "profile needs sample points");
    Profile prof;
    prof.t = t;
    prof.x = xs;
    reserve_x_range(xs.front(), xs.back());
    auto lo = truncation(xs.front(), t), hi = truncation(xs.back(), t);
    prof.q_lo = lo.first;
    prof.q_hi = hi.second;

    // warm the solver bank in parallel over the base lattice, then sweep
    std::vector<double> qs;
    for (double q = std::ceil(prof.q_lo / opt_.dq) * opt_.dq; q <= prof.q_hi + 1e-12;
         q += opt_.dq)
        qs.push_back(quantize_q(q));
    parallel_for(qs.size(), [&](size_t k) { solver_for(qs[k]); }, opt_.threads);

    size_t n = xs.size();
    prof.v.resize(n);
    prof.qstar.resize(n);
    prof.gstar.resize(n);
    prof.contact_case.resize(n);
    // per-x sweep stays serial: level-curve solvers are not safe for
    // concurrent queries, and the warm pass above already paid the grid cost
    std::vector<PointValue> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = maximize(xs[i], t);
    for (size_t i = 0; i < n; ++i) {
        prof.v[i] = pts[i].v;
        prof.qstar[i] = pts[i].qstar;
        prof.gstar[i] = pts[i].gstar;
        double r = xs[i] - pts[i].qstar;
        double ctol = std::max(10.0 * opt_.bisect_tol, 1e-3);
        if (pts[i].gstar <= wedge_floor(r) + ctol)
            prof.contact_case[i] = r >= -ctol ? 1 : 2;
        else
            prof.contact_case[i] = 0;
    }
    prof.rho.resize(n);
    for (size_t i = 0; i < n; ++i) {
        size_t il = i > 0 ? i - 1 : i;
        size_t ir = i + 1 < n ? i + 1 : i;
        double dv = prof.v[ir] - prof.v[il];
        double dx = prof.x[ir] - prof.x[il];
        prof.rho[i] = dx > 0 ? std::clamp(dv / dx, 0.0, 1.0) : 0.0;
    }
    return prof;
}

MaximizerReport maximizer_diagnostics(HydroSolver& solver, const Profile& prof, double tol) {
    MaximizerReport rep;
    for (size_t i = 0; i < prof.x.size(); ++i) {
        double q = prof.qstar[i], g = prof.gstar[i];
        double r = prof.x[i] - q;
        switch (prof.contact_case[i]) {
            case 1: rep.contact_floor++; break;
            case 2: rep.contact_wall++; break;
            default: {
                rep.interior++;
                double level = solver.solver_for(q)->gamma_rel(r + g, g);
                rep.max_level_residual =
                    std::max(rep.max_level_residual, std::fabs(level - prof.t));
            }
        }
    }
    rep.ok = rep.max_level_residual <= tol;
    return rep;
}

// ---- Lax-Oleinik direct maximization ----------------------------------------

namespace {

// Integrate w2' = c~(w) psi(xi / c~(w)) over one control interval (midpoint rule).
void integrate_w2(const FieldPtr& c, double& w1, double& w2, double xi, double dt,
                  int substeps) {
    double ds = dt / substeps;
    for (int s = 0; s < substeps; ++s) {
        double cm = c->value(w1 + 0.5 * ds * xi, w2);
        double k = cm * psi_dual(xi / cm);
        double cm2 = c->value(w1 + 0.5 * ds * xi, w2 + 0.5 * ds * k);
        double k2 = cm2 * psi_dual(xi / cm2);
        w1 += ds * xi;
        w2 += ds * k2;
    }
}

double control_value(const FieldPtr& c, const InitialData& init, double x, double t,
                     const std::vector<double>& xi, int substeps) {
    double dt = t / xi.size();
    double w1 = x;
    for (double s : xi) w1 -= dt * s;
    double w2 = -init.v0(w1);
    for (double s : xi) integrate_w2(c, w1, w2, s, dt, substeps);
    return -w2; // = v0(w1(0)) - int c~ psi(.)
}

} // namespace

double lax_oleinik_value(const FieldPtr& c_tilde, const InitialData& init, double x, double t,
                         int m, int extra_starts, uint64_t seed) {
    require(m >= 1 && t > 0.0, errc::invalid_argument, "lax_oleinik_value needs m>=1, t>0");
    Rect box{x - 4.0 * (t + 1.0), -4.0 * (t + 1.0), x + 4.0 * (t + 1.0), 4.0 * (t + 1.0)};
    double c_hi = c_tilde->bounds_on(box).second;
    double xi_max = 2.0 * (1.0 + c_hi) + std::fabs(x) / t;
    int substeps = std::max(8, 64 / m);

    auto value = [&](const std::vector<double>& xi) {
        return control_value(c_tilde, init, x, t, xi, substeps);
    };

    double best = -1e300;
    std::vector<double> best_xi(m, 0.0);
    auto consider = [&](std::vector<double> xi) {
        double v = value(xi);
        if (v > best) {
            best = v;
            best_xi = std::move(xi);
        }
    };

    // the constant-control family carries the homogeneous optimum: scan it
    // finely, then polish with a golden section
    {
        double bs = 0.0, bv = -1e300;
        auto cval = [&](double s) { return value(std::vector<double>(m, s)); };
        for (int k = 0; k <= 64; ++k) {
            double s = -xi_max + 2.0 * xi_max * k / 64.0;
            double v = cval(s);
            if (v > bv) {
                bv = v;
                bs = s;
            }
        }
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = bs - xi_max / 32.0, b = bs + xi_max / 32.0;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = cval(c1), f2 = cval(c2);
        for (int it = 0; it < 30; ++it) {
            if (f1 < f2) {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + gr * (b - a);
                f2 = cval(c2);
            } else {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - gr * (b - a);
                f1 = cval(c1);
            }
        }
        double s = f1 > f2 ? c1 : c2;
        consider(std::vector<double>(m, s));
        consider(std::vector<double>(m, bs));
    }
    // three-phase controls: slope sa until tau1, an interface-hugging middle
    // phase with zero slope, slope sb from tau2. Covers refraction and paths
    // that travel along a discontinuity on its slow side; straddled intervals
    // are blended so the switches are not quantized to the interval grid.
    if (m >= 2) {
        auto three_phase = [&](double sa, double sb, double tau1, double tau2) {
            double dt = t / m;
            std::vector<double> xi(m);
            for (int i = 0; i < m; ++i) {
                double t0 = i * dt, t1 = t0 + dt;
                double run = sa * (std::clamp(tau1, t0, t1) - t0) +
                             sb * (t1 - std::clamp(tau2, t0, t1));
                xi[i] = run / dt;
            }
            return xi;
        };
        // plain refraction: slope sa until tau, sb after
        for (int ti = 0; ti <= 16; ++ti) {
            double tau = t * ti / 16.0;
            for (int ia = 0; ia <= 12; ++ia) {
                for (int ib = 0; ib <= 12; ++ib) {
                    double sa = -xi_max + 2.0 * xi_max * ia / 12.0;
                    double sb = -xi_max + 2.0 * xi_max * ib / 12.0;
                    consider(three_phase(sa, sb, tau, tau));
                }
            }
        }
        // interface-hugging paths: start at q, hit a vertical discontinuity
        // line p at tau1, travel along it (the lsc value pays the slow side),
        // leave at tau2 straight for x
        std::vector<double> hug_lines;
        for (const auto& curve : c_tilde->curves())
            if (curve.vertical) hug_lines.push_back(curve.intercept);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        for (double p : hug_lines) {
            auto hug_xi = [&](double q, double tau1, double tau2) {
                double sa = (p - q) / std::max(tau1, 1e-9);
                double sb = tau2 >= t - 1e-9 ? 0.0 : (x - p) / (t - tau2);
                return three_phase(sa, sb, tau1, tau2);
            };
            double bq = p, bt1 = 0.5 * t, bt2 = 0.5 * t, bv = -1e300;
            double reach = xi_max * t;
            std::vector<double> q_cand{p, p - 0.02, p + 0.02};
            for (int qi = 0; qi <= 24; ++qi)
                q_cand.push_back(x - reach + 2.0 * reach * qi / 24.0);
            for (double q : q_cand) {
                for (int t1i = 1; t1i <= 10; ++t1i) {
                    double tau1 = t * t1i / 10.0;
                    for (int t2i = t1i; t2i <= 10; ++t2i) {
                        double tau2 = t * t2i / 10.0;
                        double v = value(hug_xi(q, tau1, tau2));
                        if (v > bv) {
                            bv = v;
                            bq = q;
                            bt1 = tau1;
                            bt2 = tau2;
                        }
                    }
                }
            }
            double radius_q = reach / 12.0, radius_t = t / 8.0;
            for (int pass = 0; pass < 4; ++pass) {
                for (int coord = 0; coord < 3; ++coord) {
                    double cur = coord == 0 ? bq : coord == 1 ? bt1 : bt2;
                    double rad = coord == 0 ? radius_q : radius_t;
                    double a = cur - rad, b = cur + rad;
                    if (coord > 0) {
                        a = std::max(coord == 1 ? 1e-6 : 0.0, a);
                        b = std::min(t, b);
                    }
                    auto fval = [&](double s) {
                        double q = coord == 0 ? s : bq;
                        double t1 = coord == 1 ? s : bt1;
                        double t2 = coord == 2 ? s : bt2;
                        if (t2 < t1) std::swap(t1, t2);
                        return value(hug_xi(q, std::max(t1, 1e-6), t2));
                    };
                    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
                    double f1 = fval(c1), f2 = fval(c2);
                    for (int it = 0; it < 18; ++it) {
                        if (f1 < f2) {
                            a = c1;
                            c1 = c2;
                            f1 = f2;
                            c2 = a + gr * (b - a);
                            f2 = fval(c2);
                        } else {
                            b = c2;
                            c2 = c1;
                            f2 = f1;
                            c1 = b - gr * (b - a);
                            f1 = fval(c1);
                        }
                    }
                    double s = f1 > f2 ? c1 : c2;
                    double f = std::max(f1, f2);
                    if (f > bv) {
                        bv = f;
                        (coord == 0 ? bq : coord == 1 ? bt1 : bt2) = s;
                    }
                }
                radius_q *= 0.35;
                radius_t *= 0.35;
            }
            if (bt2 < bt1) std::swap(bt1, bt2);
            consider(hug_xi(bq, std::max(bt1, 1e-6), bt2));
        }
    }
    for (int r = 0; r < extra_starts; ++r) {
        std::vector<double> xi(m);
        for (int i = 0; i < m; ++i)
            xi[i] = xi_max * (2.0 * rng::u01(rng::key(seed, 0xa11d, r, i, 7)) - 1.0);
        consider(std::move(xi));
    }

    // cyclic coordinate ascent with a shrinking bracket
    for (int sweep = 0; sweep < 9; ++sweep) {
        double radius = xi_max / std::pow(2.0, sweep);
        for (int i = 0; i < m; ++i) {
            double lo = best_xi[i] - radius, hi = best_xi[i] + radius;
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = lo, b = hi;
            double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
            auto fval = [&](double s) {
                std::vector<double> xi = best_xi;
                xi[i] = s;
                return value(xi);
            };
            double f1 = fval(c1), f2 = fval(c2);
            for (int it = 0; it < 24; ++it) {
                if (f1 < f2) {
                    a = c1;
                    c1 = c2;
                    f1 = f2;
                    c2 = a + gr * (b - a);
                    f2 = fval(c2);
                } else {
                    b = c2;
                    c2 = c1;
                    f2 = f1;
                    c1 = b - gr * (b - a);
                    f1 = fval(c1);
                }
            }
            double s = f1 > f2 ? c1 : c2;
            double f = std::max(f1, f2);
            if (f > best) {
                best = f;
                best_xi[i] = s;
            }
        }
    }
    return best;
}

double fenchel_gap(double c, double p) {
    require(c > 0.0, errc::invalid_argument, "fenchel_gap needs c > 0");
    auto obj = [&](double xi) { return xi * p + c * psi_dual(xi / c); };
    double lo = -4.0 * c - 1.0, hi = 4.0 * c + 1.0, best = 1e300;
    double arg = 0.0;
    for (int k = 0; k <= 4000; ++k) {
        double xi = lo + (hi - lo) * k / 4000.0;
        double v = obj(xi);
        if (v < best) {
            best = v;
            arg = xi;
        }
    }
    // golden polish
    double a = arg - (hi - lo) / 4000.0, b = arg + (hi - lo) / 4000.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = obj(c1), f2 = obj(c2);
    for (int it = 0; it < 60; ++it) {
        if (f1 > f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = obj(c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = obj(c1);
        }
    }
    best = std::min(best, std::min(f1, f2));
    return best - c * p * (1.0 - p);
}

} // namespace th
