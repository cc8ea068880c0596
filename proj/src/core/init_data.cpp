#include "init_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "rng.hpp"

namespace th {

InitialData InitialData::parse(const std::string& spec) {
    InitialData d;
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto nums = [&](size_t want) {
        std::vector<double> out;
        std::istringstream in(args);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                out.push_back(std::stod(tok));
            } catch (...) {
                fail(errc::parse_error, "init: bad number in '" + spec + "'");
            }
        }
        require(out.size() == want, errc::parse_error, "init: expected " +
                    std::to_string(want) + " parameter(s) in '" + spec + "'");
        return out;
    };
    if (head == "step") {
        d.family = Family::riemann;
        d.left = 1.0;
        d.right = 0.0;
    } else if (head == "rstep") {
        d.family = Family::riemann;
        d.left = 0.0;
        d.right = 1.0;
    } else if (head == "riemann") {
        auto v = nums(2);
        d.family = Family::riemann;
        d.left = v[0];
        d.right = v[1];
    } else if (head == "bernoulli" || head == "flat") {
        auto v = nums(1);
        d.family = Family::bernoulli;
        d.p = v[0];
    } else if (head == "file") {
        std::ifstream in(args);
        require(in.good(), errc::io_error, "init: cannot open '" + args + "'");
        d.family = Family::table;
        double x, r;
        while (in >> x >> r) {
            d.xs.push_back(x);
            d.rhos.push_back(r);
        }
        require(d.xs.size() >= 1, errc::parse_error, "init file: no samples");
        for (size_t i = 1; i < d.xs.size(); ++i)
            require(d.xs[i] > d.xs[i - 1], errc::parse_error,
                    "init file: x must be strictly increasing");
        // rho on (-inf, xs[0]) copies the first entry; rhos[k] holds on [xs[k], xs[k+1])
    } else {
        fail(errc::parse_error, "init: unknown family '" + head + "'");
    }
    auto check = [](double r) {
        require(r >= 0.0 && r <= 1.0, errc::invalid_argument, "density outside [0,1]");
    };
    check(d.left);
    check(d.right);
    check(d.p);
    for (double r : d.rhos) check(r);
    return d;
}

double InitialData::rho0(double x) const {
    switch (family) {
        case Family::riemann: return x < 0.0 ? left : right;
        case Family::bernoulli: return p;
        case Family::table: {
            if (x < xs.front()) return rhos.front();
            size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin() - 1;
            return rhos[i];
        }
    }
    return 0.0;
}

double InitialData::v0(double q) const {
    switch (family) {
        case Family::riemann: return q < 0.0 ? left * q : right * q;
        case Family::bernoulli: return p * q;
        case Family::table: {
            // integrate the piecewise-constant density from 0 to q
            double lo = std::min(0.0, q), hi = std::max(0.0, q);
            double acc = 0.0;
            double prev = lo;
            for (size_t i = 0; i <= xs.size(); ++i) {
                double seg_end = i < xs.size() ? xs[i] : hi;
                double a = std::max(prev, lo), b = std::min(seg_end, hi);
                if (b > a) {
                    double mid = 0.5 * (a + b);
                    acc += rho0(mid) * (b - a);
                }
                prev = seg_end;
                if (prev >= hi) break;
            }
            return q >= 0.0 ? acc : -acc;
        }
    }
    return 0.0;
}

std::vector<double> InitialData::kinks() const {
    switch (family) {
        case Family::riemann: return left == right ? std::vector<double>{} : std::vector<double>{0.0};
        case Family::bernoulli: return {};
        case Family::table: return xs;
    }
    return {};
}

std::string InitialData::describe() const {
    char buf[96];
    switch (family) {
        case Family::riemann:
            std::snprintf(buf, sizeof(buf), "riemann(%g,%g)", left, right);
            return buf;
        case Family::bernoulli:
            std::snprintf(buf, sizeof(buf), "bernoulli(%g)", p);
            return buf;
        case Family::table:
            std::snprintf(buf, sizeof(buf), "table(%zu)", xs.size());
            return buf;
    }
    return "?";
}

int InitialData::occupation(int64_t site, int64_t n, uint64_t seed) const {
    double r = rho0(static_cast<double>(site) / static_cast<double>(n));
    if (r <= 0.0) return 0;
    if (r >= 1.0) return 1;
    double u = rng::u01(rng::key(seed, rng::stream_init, site, 0, 0));
    return u < r ? 1 : 0;
}

} // namespace th
