#pragma once

#include <memory>
#include <vector>

#include "geom.hpp"
#include "speed_field.hpp"

namespace th {

// Homogeneous rate-1 corner growth shape, (sqrt(x)+sqrt(y))^2.
double gamma_shape(double x, double y);

// Negative Legendre dual of the TASEP flux f(rho) = rho(1-rho).
double psi_dual(double y);

struct Move {
    int a = 0;
    int b = 0;
    double gam = 0.0;              // gamma_shape(a, b)
    std::vector<int> raster_off;   // substep sample offsets on the h/2 raster
};

struct ShapeOptions {
    int max_slope = 8;        // move components run over 1..max_slope, coprime
    bool origin_launch = true; // single straight segment from the start corner
    bool axis_launches = true; // straight segments from geometrically spaced axis nodes
    int max_launch_samples = 192;
};

// Bellman solution of the path variational problem on a grid: node (i,j)
// holds the best value over monotone staircase paths from `start` built from
// rational-slope moves, with 1/c sampled along each move on an h/2 raster.
// Straight launch segments from the start and from axis nodes are added as
// extra candidates; they make constant fields exact.
class ValueGrid {
  public:
    ValueGrid(FieldPtr field, Point start, double width, double height, double h,
              ShapeOptions opt = {});

    double spacing() const { return h_; }
    Point start() const { return start_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double width() const { return nx_ * h_; }
    double height() const { return ny_ * h_; }
    const ShapeOptions& options() const { return opt_; }
    const std::vector<Move>& moves() const { return moves_; }

    // Value at a grid node.
    double at(int i, int j) const { return val_[idx(i, j)]; }

    // Value at relative coordinates (rx, ry) in [0,width]x[0,height]:
    // Catmull-Rom interpolation in the grid interior, a direct Bellman update
    // over a back-window of nodes near the axes (where the value function has
    // square-root behaviour that polynomial interpolation misses).
    double value_rel(double rx, double ry) const;

  private:
    double value_interp(double u, double v) const;
    double value_update(double u, double v) const;
    double launch_cost(double i0, double j0, double u, double v) const;
    size_t idx(int i, int j) const { return static_cast<size_t>(j) * (nx_ + 1) + i; }
    double raster_at(int ri, int rj) const {
        return inv_c_[static_cast<size_t>(rj) * rnx_ + ri];
    }
    double segment_mean_inv_c(double i0, double j0, double i1, double j1) const;
    bool segment_crosses_line(double i0, double j0, double i1, double j1) const;
    double node_interp(int i, int j) const;
    void compute();

    FieldPtr field_;
    Point start_;
    double h_;
    int nx_, ny_;
    size_t rnx_, rny_;
    ShapeOptions opt_;
    std::vector<Move> moves_;
    std::vector<float> inv_c_; // 1/c on the h/2 raster
    std::vector<double> val_;
    // discontinuity lines in grid units (y = m x + b, or x = b when vertical):
    // near-axis queries try a kink on these, since a single straight launch
    // cannot represent a refracted optimal path
    struct LocalLine {
        bool vertical;
        double m, b;
    };
    std::vector<LocalLine> lines_;
};

std::vector<Move> build_move_set(int max_slope);

// Gamma_c(start -> end) by a one-off grid sized to the query.
double shape_value(const FieldPtr& field, Point start, Point end, double h,
                   ShapeOptions opt = {});

// Gamma_c^q(rel) = Gamma for the field shifted to (q - v0q, -v0q).
double shape_shifted_q(const FieldPtr& field, double q, double v0q, Point rel, double h,
                       ShapeOptions opt = {});

// Wedge-frame value function for the particle-coordinate variational formula:
// paths from (0,0) to (x,y), y >= 0, x >= -y, derivative in the wedge, with
// integrand gamma((w1+w2)', w2') / c_tilde(w1 + x_off, w2 + y_off).
// Used as an independent route to Gamma^q(x+y, y) in tests.
double wedge_shape_value(const FieldPtr& c_tilde, double x_off, double y_off, double x,
                         double y, double h, int max_slope = 8);

} // namespace th
