#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <utility>
#include <vector>

// Reference implementations written independently of the library, used only
// to cross-check it.
namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Two-mode output amplitudes of |n1, n2> by expanding
// (T x + R y)^n1 (T y - R x)^n2 / sqrt(n1! n2!) term by term, where x and y
// create photons in output 1 and output 2.
std::map<std::pair<int, int>, double> bs_expand(int n1, int n2, double r2);

// Unitary of the beam splitter on the two-mode space with up to `n_total`
// photons in total, indexed (n1, n2) -> n1 * (n_total + 1) + n2.
Mat bs_unitary(int n_total, double r2);

// Squeezed vacuum amplitudes by the two-term recursion
// c_{2n+2} = sign tanh(xi) sqrt((2n+1)/(2n+2)) c_{2n}. sign = +1 stretches
// the state along x, sign = -1 squeezes x.
Vec squeezed_vacuum(double xi, int dim, double sign = 1.0);

// Coherent amplitudes by c_{n+1} = beta c_n / sqrt(n+1), then e^{-beta^2/2}.
Vec coherent(double beta, int dim);

// W(x, p) = Tr[D(a)^dag rho D(a) Parity] / pi with a = (x + i p)/sqrt(2) and
// D from a dense matrix exponential on a basis of `big` levels.
double wigner(const Mat& rho, double x, double p, int big = 90);

// Apply the loss Kraus map by explicitly dilating onto a vacuum ancilla,
// mixing on a beam splitter of reflectance `loss` and tracing the ancilla.
Mat loss_dilation(const Mat& rho, double loss);

double binomial(int n, int k);

}  // namespace oracle
