#pragma once

namespace spheq {

enum class HMethod { quadrature, closed_form, series_near_1 };

struct HEval {
    double t;
    int n;
    double value;
    HMethod method;
};

// H(t) = int_0^inf (t+s)^{-3/2} (1+s)^{-(n-1)/2} ds, the aspect-ratio integral
// governing the stationarity equations.  t > 0, n in [3,16].
double h(double t, int n);

// H'(t); negative for all t > 0.
double h_prime(double t, int n);

// Evaluate by a specific method.  closed_form is exact away from t=1 (it has a
// removable 0/0 there); series_near_1 converges for |t-1| < 1.
HEval h_eval(double t, int n, HMethod method);
HEval h_prime_eval(double t, int n, HMethod method);

// The three companion integrals, by direct quadrature:
//   j5 = int (t+s)^{-5/2} (1+s)^{-(n-1)/2}   ( = -(2/3) H'(t) )
//   jb = int (t+s)^{-1/2} (1+s)^{-(n+1)/2}   ( = 2/((n-1) sqrt t) - H(t)/(n-1) )
//   jc = int (t+s)^{-3/2} (1+s)^{-(n+1)/2}   ( = 2/((n-1) t^{3/2}) + 2 H'(t)/(n-1) )
struct AuxIntegrals {
    double j5;
    double jb;
    double jc;
};
AuxIntegrals aux_integrals(double t, int n, double tol = 1e-12);

// int_0^inf (t+s)^{-1/2} (1+s)^{-(n-1)/2} ds, the constant term of the interior
// Coulomb potential, via the identity (2/sqrt(t) + (t-1) H(t)) / (n-2).
double interior_constant_integral(double t, int n);

}  // namespace spheq
