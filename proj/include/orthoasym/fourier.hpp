#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace orthoasym {

using cdouble = std::complex<double>;

/// Fourier coefficients c_{-M}..c_M of h(x, .).
struct FourierTable {
    double x = 0;
    int M = 0;
    std::vector<cdouble> c;      ///< c[m + M]
    std::int64_t grid = 0;       ///< final grid size
    double error_estimate = 0;   ///< max |c_m(grid) - c_m(grid/2)|

    cdouble at(int m) const { return c.at(std::size_t(m + M)); }
    std::string to_csv() const;      ///< m,re,im,abs
    nlohmann::json sidecar() const;  ///< x, M, grid, error estimate
};

struct FourierOptions {
    double tol = 1e-11;
    std::int64_t max_grid = std::int64_t(1) << 20;
    /// Compute negative m by their own quadrature instead of conjugation.
    bool audit = false;
};

/**
 * (1/2pi) int h(x,t) e^{-imt} dt by the discrete transform, doubling the grid
 * from `grid` until successive tables agree to `tol`.
 * Requires 0 < x < 1/4 and grid a power of two >= 16 M.
 */
FourierTable cm_fft(double x, int M, std::int64_t grid, const FourierOptions& opt = {});

struct ContourGeometry {
    cdouble w1, w2, v1, v2; ///< cut endpoints
    cdouble pl1, pl2;       ///< poles of the continued kernel
    double arc_radius = 0;  ///< the w-arc lies inside |z| <= arc_radius
};

ContourGeometry geometry(double x);

struct ContourParts {
    cdouble circle;  ///< small-circle integral on |z| = x^2
    cdouble residue; ///< residue contribution at pl1
    cdouble total;   ///< c_{-m}; c_m is its conjugate
    std::int64_t grid = 0;
};

/// c_{-m} split into its small-circle and residue parts (m >= 1).
ContourParts cm_contour_parts(double x, int m, double tol = 1e-11);
/// c_m(x) via the contour decomposition; negative m by conjugation.
cdouble cm_contour(double x, int m);

/// The residue of the continued kernel at pl1 from its closed form, and the
/// real part of the log in its numerator (zero up to roundoff).
struct ResidueData {
    cdouble f_at_pole, dg_at_pole, residue;
    double log_real_part = 0;
};
ResidueData residue_at_pl1(double x);

/// The continued kernel pieces f*(z), g*(z) (for cross-checks).
cdouble f_star(double x, cdouble z);
cdouble g_star(double x, cdouble z);

/// (1/2pi) int eps_m(x,t) e^{-ikt} dt with grid doubling.
cdouble fkm(double x, long m, long k, std::int64_t grid = 64, const FourierOptions& opt = {});

struct MonotonicityReport {
    int m = 0;
    std::vector<double> x;
    std::vector<double> abs_c;
    bool monotone_all = false;   ///< |c_m| decreases along the whole (descending) grid
    bool monotone_tail = false;  ///< decreases on some nonempty tail
    double threshold = 0;        ///< largest x from which on |c_m| decreases (0 if none)
    std::string verdict;         ///< "monotone", "monotone-tail" or "inconclusive"
};

MonotonicityReport monotonicity_scan(int m, const std::vector<double>& xs);

} // namespace orthoasym
