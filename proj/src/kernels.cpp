#include "orthoasym/kernels.hpp"

// Explicit instantiations for the two scalar types in use.
namespace orthoasym::kernels {

template FG<double> fg_complex<double>(const double&, const double&);
template FG<quad> fg_complex<quad>(const quad&, const quad&);
template double h_value<double>(const double&, const double&);
template quad h_value<quad>(const quad&, const quad&);
template std::complex<double> l_value<double>(long, const double&, const double&);
template cquad l_value<quad>(long, const quad&, const quad&);
template std::complex<double> eps_value<double>(long, const double&, const double&);
template cquad eps_value<quad>(long, const quad&, const quad&);

} // namespace orthoasym::kernels
