#pragma once

#include <cmath>

namespace hapto {

/// Adaptive Simpson integration of f over [a,b] to an absolute tolerance,
/// with the usual diff/15 Richardson correction and a recursion-depth cap.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol) {
    auto segment = [](double fa, double fm, double fb, double lo, double hi) {
        return (hi - lo) * (fa + 4.0 * fm + fb) / 6.0;
    };

    struct Rec {
        const F& fn;
        decltype(segment) seg;
        double recurse(double lo, double hi, double flo, double fmid, double fhi, double whole,
                       double tol, int depth) const {
            const double m = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
            const double flm = fn(lm), frm = fn(rm);
            const double left = seg(flo, flm, fmid, lo, m);
            const double right = seg(fmid, frm, fhi, m, hi);
            const double diff = left + right - whole;
            if (depth <= 0 || std::abs(diff) <= 15.0 * tol)
                return left + right + diff / 15.0;
            return recurse(lo, m, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
                   recurse(m, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
        }
    };

    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = segment(fa, fm, fb, a, b);
    Rec rec{f, segment};
    return rec.recurse(a, b, fa, fm, fb, whole, abs_tol, 48);
}

}  // namespace hapto
