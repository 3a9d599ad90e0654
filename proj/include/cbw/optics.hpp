#ifndef CBW_OPTICS_HPP
#define CBW_OPTICS_HPP

#include <complex>

namespace cbw
{

// Field amplitude in units of sqrt(intensity).
using Complex = std::complex<double>;

// Fields on the two ports of a plane. Port 0 ("upper") is the port that
// carries the source amplitude at the input plane.
struct FieldPair
{
    Complex upper{};
    Complex lower{};
};

// Dimensionless complex 2x2 transfer operator acting on FieldPair column
// vectors: out = M * (upper, lower)^T.
struct Matrix2
{
    Complex a11{}, a12{}, a21{}, a22{};

    static Matrix2 identity();
};

// Lossless 50/50 splitter, (1/sqrt2) [[1, i], [i, 1]].
Matrix2 bs_matrix();

// diag(1, e^{i phi}): relative phase between the two paths.
Matrix2 phase_matrix(double phi_rad);

// Same matrix as phase_matrix; kept as a distinct name for the inter-stage
// coupling phase so call sites read like the optical layout.
Matrix2 coupling_matrix(double psi_rad);

// diag(t_upper, t_lower) with amplitude transmissions in [0, 1].
// t = 0 models a beam block on that path.
Matrix2 attenuation_matrix(double t_upper, double t_lower);

// Closed form of bs * phase(phi) * bs:
//   (1/2) [[1 - e^{i phi}, i(1 + e^{i phi})], [i(1 + e^{i phi}), -(1 - e^{i phi})]]
Matrix2 mzi_matrix(double phi_rad);

// Standard complex product; the left operand acts last.
Matrix2 matmul(const Matrix2& m, const Matrix2& n);
Matrix2 operator*(const Matrix2& m, const Matrix2& n);

FieldPair apply(const Matrix2& m, const FieldPair& f);

double intensity(const Complex& amplitude);
double total_power(const FieldPair& f);

// True iff every entry of M^dagger M deviates from the identity by at most eps.
bool is_unitary(const Matrix2& m, double eps);

} // namespace cbw

#endif // CBW_OPTICS_HPP
