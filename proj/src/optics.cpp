#include "cbw/optics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cbw
{
namespace
{
constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v))
    {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}
} // namespace

Matrix2 Matrix2::identity()
{
    return {Complex{1.0, 0.0}, Complex{}, Complex{}, Complex{1.0, 0.0}};
}

Matrix2 bs_matrix()
{
    const Complex t{kInvSqrt2, 0.0};
    const Complex r{0.0, kInvSqrt2};
    return {t, r, r, t};
}

Matrix2 phase_matrix(double phi_rad)
{
    require_finite(phi_rad, "phase_matrix: phi_rad");
    return {Complex{1.0, 0.0}, Complex{}, Complex{}, std::polar(1.0, phi_rad)};
}

Matrix2 coupling_matrix(double psi_rad)
{
    require_finite(psi_rad, "coupling_matrix: psi_rad");
    return {Complex{1.0, 0.0}, Complex{}, Complex{}, std::polar(1.0, psi_rad)};
}

Matrix2 attenuation_matrix(double t_upper, double t_lower)
{
    for (double t : {t_upper, t_lower})
    {
        if (!(t >= 0.0 && t <= 1.0))
        {
            throw std::invalid_argument("attenuation_matrix: transmission " + std::to_string(t) +
                                        " out of range [0,1]");
        }
    }
    return {Complex{t_upper, 0.0}, Complex{}, Complex{}, Complex{t_lower, 0.0}};
}

Matrix2 mzi_matrix(double phi_rad)
{
    require_finite(phi_rad, "mzi_matrix: phi_rad");
    const Complex e = std::polar(1.0, phi_rad);
    const Complex bar = 0.5 * (Complex{1.0, 0.0} - e);
    const Complex cross = Complex{0.0, 1.0} * (0.5 * (Complex{1.0, 0.0} + e));
    return {bar, cross, cross, -bar};
}

Matrix2 matmul(const Matrix2& m, const Matrix2& n)
{
    return {m.a11 * n.a11 + m.a12 * n.a21, m.a11 * n.a12 + m.a12 * n.a22,
            m.a21 * n.a11 + m.a22 * n.a21, m.a21 * n.a12 + m.a22 * n.a22};
}

Matrix2 operator*(const Matrix2& m, const Matrix2& n)
{
    return matmul(m, n);
}

FieldPair apply(const Matrix2& m, const FieldPair& f)
{
    return {m.a11 * f.upper + m.a12 * f.lower, m.a21 * f.upper + m.a22 * f.lower};
}

double intensity(const Complex& amplitude)
{
    return std::norm(amplitude);
}

double total_power(const FieldPair& f)
{
    return std::norm(f.upper) + std::norm(f.lower);
}

bool is_unitary(const Matrix2& m, double eps)
{
    if (!(eps > 0.0))
    {
        throw std::invalid_argument("is_unitary: eps must be positive");
    }
    const Complex one{1.0, 0.0};
    const Complex c11 = std::conj(m.a11) * m.a11 + std::conj(m.a21) * m.a21;
    const Complex c12 = std::conj(m.a11) * m.a12 + std::conj(m.a21) * m.a22;
    const Complex c21 = std::conj(m.a12) * m.a11 + std::conj(m.a22) * m.a21;
    const Complex c22 = std::conj(m.a12) * m.a12 + std::conj(m.a22) * m.a22;
    const double dev = std::max({std::abs(c11 - one), std::abs(c12), std::abs(c21), std::abs(c22 - one)});
    return dev <= eps;
}

} // namespace cbw
