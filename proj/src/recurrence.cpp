#include "orthoasym/recurrence.hpp"

#include <algorithm>
#include <sstream>

namespace orthoasym {

namespace {

EvalTrace eval_impl(const CoefficientFamily& f, double omega, index_t N, index_t stride, bool use_offsets)
{
    if (N < 1)
        throw std::invalid_argument("eval: N must be >= 1");
    if (stride < 1)
        throw std::invalid_argument("eval: stride must be >= 1");
    EvalTrace tr;
    tr.omega = omega;
    tr.stride = stride;
    tr.n = N;
    tr.rows.reserve(std::size_t(N / stride + 2));
    CompensatedSum<double> sp, sg;
    double last_p = 0;
    run_recurrence(f, omega, N, use_offsets, [&](index_t n, double pn, double pn1, double gn) {
        sp.add(pn * pn);
        sg.add(1.0 / gn);
        if (n % stride == 0 || n == N)
            tr.rows.push_back({n, pn, pn1, sp.value(), sg.value()});
        if (n == N) {
            tr.p_prev = last_p;
            tr.p_curr = pn;
            tr.p_next = pn1;
        }
        last_p = pn;
        return true;
    });
    tr.sum_p2 = sp.value();
    tr.sum_invgamma = sg.value();
    return tr;
}

} // namespace

std::string EvalTrace::to_csv() const
{
    std::ostringstream os;
    os << "n,p_n,p_np1,sum_p2,sum_invgamma\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt17(r.p_n) << ',' << fmt17(r.p_np1) << ',' << fmt17(r.sum_p2) << ','
           << fmt17(r.sum_invgamma) << '\n';
    return os.str();
}

EvalTrace eval_symmetric(const CoefficientFamily& f, double omega, index_t N, index_t stride)
{
    return eval_impl(f, omega, N, stride, false);
}

EvalTrace eval_nonsymmetric(const CoefficientFamily& f, double omega, index_t N, index_t stride)
{
    return eval_impl(f, omega, N, stride, true);
}

double cd_residual(const CoefficientFamily& f, double omega, double sigma, index_t n)
{
    if (omega == sigma)
        throw std::invalid_argument("cd_residual: omega == sigma (confluent form not supported)");
    if (n < 0)
        throw std::invalid_argument("cd_residual: n must be >= 0");
    std::vector<double> a, b;
    a.reserve(std::size_t(n + 2));
    b.reserve(std::size_t(n + 2));
    run_recurrence(f, omega, n, false, [&](index_t k, double pk, double pk1, double) {
        a.push_back(pk);
        if (k == n)
            a.push_back(pk1);
        return true;
    });
    run_recurrence(f, sigma, n, false, [&](index_t k, double pk, double pk1, double) {
        b.push_back(pk);
        if (k == n)
            b.push_back(pk1);
        return true;
    });
    CompensatedSum<double> s;
    for (index_t k = 0; k <= n; ++k)
        s.add(a[std::size_t(k)] * b[std::size_t(k)]);
    const std::size_t i = std::size_t(n);
    const double lhs = (omega - sigma) * s.value();
    const double rhs = f.gamma(n) * (a[i + 1] * b[i] - b[i + 1] * a[i]);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0 ? 0.0 : (lhs - rhs) / scale;
}

std::vector<std::pair<index_t, double>> christoffel_ratio(const CoefficientFamily& f, double omega, index_t N,
                                                          index_t stride)
{
    if (N < 10)
        throw std::invalid_argument("christoffel_ratio: N must be >= 10");
    if (stride <= 0)
        stride = std::max<index_t>(1, N / 1000);
    EvalTrace tr = eval_symmetric(f, omega, N, stride);
    std::vector<std::pair<index_t, double>> out;
    out.reserve(tr.rows.size());
    for (const auto& r : tr.rows)
        out.emplace_back(r.n, r.sum_p2 / r.sum_invgamma);
    return out;
}

} // namespace orthoasym
