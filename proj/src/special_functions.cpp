#include "anyonprop/special_functions.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "anyonprop/errors.hpp"

namespace anyonprop {

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;
constexpr double kPiD = (double)kPiL;
constexpr double kTwoPiD = 2.0 * kPiD;

// ---------------------------------------------------------------------------
// Lanczos approximation, N=13, g = 6.024680040776729583740234375.
// Rational form P(z)/Q(z) with Q(z) = z(z+1)...(z+11); the "expG scaled"
// numerator absorbs e^g so Gamma(z) = ((z+g-1/2)/e)^(z-1/2) * S(z).
// Max error of the table itself ~1.2e-17.
// ---------------------------------------------------------------------------
const long double kLanczosG = 6.024680040776729583740234375L;

const long double kLanczosNum[13] = {
    56906521.91347156388090791033559122686859L,
    103794043.1163445451906271053616070238554L,
    86363131.28813859145546927288977868422342L,
    43338889.32467613834773723740590533316085L,
    14605578.08768506808414169982791359218571L,
    3481712.15498064590882071018964774556468L,
    601859.6171681098786670226533699352302507L,
    75999.29304014542649875303443598909137092L,
    6955.999602515376140356310115515198987526L,
    449.9445569063168119446858607650988409623L,
    19.51992788247617482847860966235652136208L,
    0.5098416655656676188125178644804694509993L,
    0.006061842346248906525783753964555936883222L,
};

const long double kLanczosDen[13] = {
    0.0L,
    39916800.0L,
    120543840.0L,
    150917976.0L,
    105258076.0L,
    45995730.0L,
    13339535.0L,
    2637558.0L,
    357423.0L,
    32670.0L,
    1925.0L,
    66.0L,
    1.0L,
};

template <typename Real>
Real lanczos_sum_expg_scaled(Real z) {
    Real num = 0, den = 0;
    if (z <= 1.0) {
        for (int k = 12; k >= 0; --k) {
            num = num * z + static_cast<Real>(kLanczosNum[k]);
            den = den * z + static_cast<Real>(kLanczosDen[k]);
        }
    } else {
        Real w = 1.0 / z;  // Horner in 1/z keeps both polynomials bounded
        for (int k = 0; k <= 12; ++k) {
            num = num * w + static_cast<Real>(kLanczosNum[k]);
            den = den * w + static_cast<Real>(kLanczosDen[k]);
        }
    }
    return num / den;
}

template <typename Real>
Real lanczos_log_gamma(Real z) {
    // Lift small arguments with ln Gamma(z) = ln Gamma(z+1) - ln z.
    Real shift = 0;
    while (z < Real(0.5)) {
        shift -= std::log(z);
        z += 1;
    }
    Real zg = z + (static_cast<Real>(kLanczosG) - Real(0.5));
    return shift + (z - Real(0.5)) * (std::log(zg) - 1) +
           std::log(lanczos_sum_expg_scaled(z));
}

inline long double lgammal_(long double z) { return lanczos_log_gamma(z); }

// ---------------------------------------------------------------------------
// Debye uniform-expansion polynomials u_k(t) = t^k * (poly in t^2), exact
// rational coefficients from the recurrence
//   u_{k+1} = t^2(1-t^2)/2 u_k' + (1/8) int_0^t (1-5 s^2) u_k(s) ds.
// Row k lists the coefficients of (t^2)^j, j = 0..k.
// ---------------------------------------------------------------------------
const double kDebyeU[14][14] = {
    {1.0},
    {0.125, -0.208333333333333333333},
    {0.0703125, -0.401041666666666666667, 0.334201388888888888889},
    {0.0732421875, -0.8912109375, 1.84646267361111111111, -1.02581259645061728395},
    {0.112152099609375, -2.3640869140625, 8.78912353515625, -11.2070026162229938272,
     4.66958442342624742798},
    {0.227108001708984375, -7.36879435947963169643, 42.5349987453884548611,
     -91.8182415432400173611, 84.6362176746007346322, -28.2120725582002448774},
    {0.57250142097473144531, -26.4914304869515555246, 218.190511744211590348,
     -699.579627376132541567, 1059.99045252799987357, -765.252468141181642505,
     212.570130039217123988},
    {1.72772750258445739746, -108.090919788394655541, 1200.90291321635246276,
     -5305.64697861340310977, 11655.3933368645332193, -13586.5500064341374424,
     8061.72218173730938794, -1919.45766231840699833},
    {6.07404200127348303795, -493.915304773088012082, 7109.51430248936372405,
     -41192.6549688975513251, 122200.464983017459818, -203400.177280415534008,
     192547.001232531532246, -96980.5983886375134864, 20204.2913309661485785},
    {24.3805296995560819086, -2499.83048181120962386, 45218.7689813627263462,
     -331645.17248456357783, 1268365.27332162478158, -2813563.22658653411451,
     3763271.29765640400255, -2998015.91853810675085, 1311763.61466297720068,
     -242919.187900551333102},
    {110.017140269246738652, -13886.0897537170405951, 308186.40461266239848,
     -2785618.12808645468816, 13288767.1664218183396, -37567176.6607633513062,
     66344512.2747290267031, -74105148.2115326577087, 50952602.4926646422062,
     -19706819.1184322269024, 3284469.85307203782068},
    {551.33589612202058561, -84005.4336030240853057, 2243768.17792244943663,
     -24474062.7257387285286, 142062907.797533095867, -495889784.275030309517,
     1106842816.82301446938, -1621080552.10833707661, 1553596899.57058005681,
     -939462359.681578402897, 325573074.185765749026, -49329253.664509961974},
    {3038.09051092238426755, -549842.327572288687109, 17395107.5539781645388,
     -225105661.889415277815, 1559279864.87925751462, -6563293792.61928433199,
     17954213731.1556000997, -33026599749.8007231013, 41280185579.753973955,
     -34632043388.1587779016, 18688207509.2958249244, -5866481492.05184722895,
     814789096.118312115209},
    {18257.7554742931747305, -3871833.44257261262343, 143157876.718888981794,
     -2167164983.22379509694, 17634730606.8349694689, -87867072178.0232657377,
     287900649906.150589045, -645364869245.376503193, 1008158106865.38209436,
     -1098375156081.22331551, 819218669548.577329419, -399096175224.466498628,
     112734998530.502894927, -14679261247.6956167858},
};

// ---------------------------------------------------------------------------
// e^{-x} I_nu(x): the three evaluation branches.
// ---------------------------------------------------------------------------

// Ascending power series, summed outward from its largest term in long double.
// All terms are positive, so the only accuracy limits are the rounding of the
// peak-term exponent and ordinary accumulation error.
ScaledBessel series_i_scaled(double nu, double x) {
    ScaledBessel out;
    out.scale = x;
    const long double xl = x, nl = nu;
    const long double half = xl / 2;
    // index of the largest term of sum_k (x/2)^(nu+2k) / (k! Gamma(nu+k+1))
    long kpk = (long)((-(nl + 1) + std::sqrt((nl + 1) * (nl + 1) + xl * xl)) / 2);
    if (kpk < 0) kpk = 0;
    const long double q = half * half;
    long double sum = 1.0L;  // in units of the peak term
    long double t = 1.0L;
    int terms = 1;
    for (long k = kpk;; ++k) {  // upward from the peak
        t *= q / ((long double)(k + 1) * (nl + k + 1));
        sum += t;
        ++terms;
        if (t < 1e-21L * sum && k > kpk + 2) break;
        if (k > kpk + 2000000) throw EvaluationError("bessel_i_scaled: series stalled");
    }
    t = 1.0L;
    for (long k = kpk; k > 0; --k) {  // downward from the peak
        t *= ((long double)k * (nl + k)) / q;
        sum += t;
        ++terms;
        if (t < 1e-21L * sum) break;
    }
    const long double lpeak =
        (nl + 2 * kpk) * std::log(half) - lgammal_((long double)(kpk + 1)) -
        lgammal_(nl + kpk + 1);
    out.value = (double)(sum * std::exp(lpeak - xl));
    out.terms = terms;
    return out;
}

// Large-argument (Hankel) expansion of e^{-x} I_nu(x); usable when
// nu^2 <~ 3x so the terms decrease from the start and bottom out below
// 1e-13 before the tail diverges.
ScaledBessel hankel_i_scaled(double nu, double x) {
    ScaledBessel out;
    out.scale = x;
    const double mu4 = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0, prev = std::numeric_limits<double>::max();
    int k = 1;
    for (; k <= 40; ++k) {
        term *= -(mu4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        if (std::abs(term) >= prev) break;  // asymptotic series turned around
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-17 * std::abs(sum)) break;
    }
    out.value = sum / std::sqrt(kTwoPiD * x);
    out.terms = k;
    return out;
}

// Uniform large-order (Debye) expansion.  The exponent nu*eta - x is
// rearranged as nu^2/(rho+x) - nu*log1p((nu + nu^2/(rho+x))/x) with
// rho = hypot(nu, x), which is free of the catastrophic cancellation the
// textbook form suffers at large nu*z.
ScaledBessel debye_i_scaled(double nu, double x) {
    ScaledBessel out;
    out.scale = x;
    const double rho = std::hypot(nu, x);
    const double t = nu / rho;
    const double u = t * t;
    const double corr = nu * nu / (rho + x);
    const double expo = corr - nu * std::log1p((nu + corr) / x);
    double s = 0.0;
    double p = 1.0;  // t^k / nu^k
    for (int k = 0; k < 14; ++k) {
        double row = 0.0;
        for (int j = k; j >= 0; --j) row = row * u + kDebyeU[k][j];
        // row is now sum_j c_j u^j; restore the leading t^k via p
        s += row * p;
        p *= t / nu;
    }
    out.value = std::exp(expo) * s / std::sqrt(kTwoPiD * rho);
    out.terms = 14;
    return out;
}

// ---------------------------------------------------------------------------
// J_nu(x) branches.
// ---------------------------------------------------------------------------

// Alternating ascending series in long double; the loss of significance is
// ~x/ln(10) digits, acceptable up to x ~ 12.
double series_j(double nu, double x) {
    const long double xl = x, nl = nu;
    const long double half = xl / 2;
    const long double q = half * half;
    long double t0 = std::exp(nl * std::log(half) - lgammal_(nl + 1));
    long double sum = t0, t = t0, tmax = std::abs(t0);
    for (long k = 0; k < 40000; ++k) {
        t *= -q / ((long double)(k + 1) * (nl + k + 1));
        sum += t;
        if (std::abs(t) > tmax) tmax = std::abs(t);
        if (std::abs(t) < 1e-20L * tmax && k > 3) return (double)sum;
    }
    throw EvaluationError("bessel_j: power series failed to converge");
}

// Hankel asymptotic form J = sqrt(2/(pi x)) (P cos w - Q sin w),
// w = x - (nu/2 + 1/4) pi.  Phase assembled in long double.
double hankel_j(double nu, double x) {
    const double mu4 = 4.0 * nu * nu;
    double c = 1.0;  // a_k / x^k
    double P = 1.0, Q = 0.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 40; ++k) {
        c *= (mu4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        if (std::abs(c) >= prev) break;
        prev = std::abs(c);
        switch (k % 4) {
            case 0: P += c; break;
            case 1: Q += c; break;
            case 2: P -= c; break;
            case 3: Q -= c; break;
        }
        if (prev < 1e-18) break;
    }
    const long double w =
        (long double)x - (kPiL * ((long double)nu / 2 + 0.25L));
    const double cw = (double)std::cos(w), sw = (double)std::sin(w);
    return std::sqrt(2.0 / (kPiD * x)) * (P * cw - Q * sw);
}

// Backward (Miller) recurrence chain J_{mu+k}(x), k = 0..count-1, normalised
// with the Neumann series (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}.
std::vector<double> miller_chain(double mu, double x, int count) {
    const int top = count - 1;
    const int start =
        (int)std::ceil(std::max(x, mu + top)) +
        (int)(2.0 * std::sqrt(std::max(x, (double)top) + 1.0)) + 20;
    std::vector<double> v((size_t)start + 2, 0.0);
    v[(size_t)start + 1] = 0.0;
    v[(size_t)start] = 1e-300;
    for (int k = start; k >= 1; --k) {
        double next = (2.0 * (mu + k) / x) * v[(size_t)k] - v[(size_t)k + 1];
        v[(size_t)k - 1] = next;
        if (std::abs(next) > 1e250) {
            for (int j = k - 1; j <= start + 1; ++j) v[(size_t)j] *= 1e-250;
        }
    }
    // Neumann normalisation; coefficients are O(1) for mu in [0, 1).
    double S = std::exp(log_gamma(mu + 1.0)) * v[0];
    for (int k = 1; 2 * k <= start; ++k) {
        double ck = (mu + 2.0 * k) *
                    std::exp(log_gamma(mu + k) - log_gamma(k + 1.0));
        S += ck * v[(size_t)(2 * k)];
    }
    const double scale = std::pow(x / 2.0, mu) / S;
    std::vector<double> out((size_t)count);
    for (int k = 0; k < count; ++k) out[(size_t)k] = v[(size_t)k] * scale;
    return out;
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("log_gamma: require finite x > 0");
    return (double)lanczos_log_gamma((long double)x);
}

ScaledBessel bessel_i_scaled(double nu, double x) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw DomainError("bessel_i_scaled: require finite nu >= 0");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("bessel_i_scaled: require finite x >= 0");
    if (x == 0.0) {
        ScaledBessel out;
        out.value = (nu == 0.0) ? 1.0 : 0.0;
        out.scale = 0.0;
        out.terms = 1;
        return out;
    }
    // Series/asymptotic switchover at x = max(30, nu^2/20).  The Hankel
    // expansion needs its terms decreasing from the first step, which takes
    // nu^2 <= 4x; require nu^2 <= 3x for margin and let the series cover the
    // strip in between (it is valid everywhere, just slower).
    if (x >= 30.0 && nu * nu <= 20.0 * x) {
        if (nu >= 14.0) return debye_i_scaled(nu, x);
        if (nu * nu <= 3.0 * x) return hankel_i_scaled(nu, x);
    }
    return series_i_scaled(nu, x);
}

double bessel_j(double nu, double x) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw DomainError("bessel_j: require finite nu >= 0");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("bessel_j: require finite x >= 0");
    if (x == 0.0) return (nu == 0.0) ? 1.0 : 0.0;
    if (x <= 12.0) return series_j(nu, x);
    // Same decreasing-terms constraint as the scaled-I dispatch.
    if (x >= 30.0 && nu < 14.0 && nu * nu <= 3.0 * x) return hankel_j(nu, x);
    const int k = (int)std::floor(nu);
    return miller_chain(nu - k, x, k + 1)[(size_t)k];
}

std::vector<double> bessel_j_ladder(double mu, double x, int count) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw DomainError("bessel_j_ladder: require finite mu >= 0");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("bessel_j_ladder: require finite x >= 0");
    if (count < 1) throw DomainError("bessel_j_ladder: require count >= 1");
    std::vector<double> out((size_t)count);
    if (x == 0.0) {
        for (int k = 0; k < count; ++k)
            out[(size_t)k] = (mu + k == 0.0) ? 1.0 : 0.0;
        return out;
    }
    if (x <= 12.0) {
        for (int k = 0; k < count; ++k) out[(size_t)k] = series_j(mu + k, x);
        return out;
    }
    return miller_chain(mu, x, count);
}

double bessel_i_generating_sum(double x, int m_max) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("bessel_i_generating_sum: require finite x >= 0");
    if (m_max < 0)
        throw DomainError("bessel_i_generating_sum: require m_max >= 0");
    double s = bessel_i_scaled(0.0, x).value;
    for (int m = 1; m <= m_max; ++m) s += 2.0 * bessel_i_scaled((double)m, x).value;
    return std::exp(x) * s;
}

} // namespace anyonprop
