#pragma once

#include "zfr/trigpoly.hpp"

namespace zfr {

// The degree-16 Mossinghoff-Trudgian cosine polynomial, embedded as the
// default input.  Decimal literals are copied verbatim from the published
// coefficient table.  Note: these printed coefficients are themselves
// rounded; the resulting polynomial dips to about -2.0057e-4 near
// phi = 2.0608, which is why the default admissibility tolerance is 2.5e-4.
inline const TrigPoly& mt16() {
    static const TrigPoly p{16, {
        1.0,
        1.74126664022806,
        1.128282822804652,
        0.5065272432186642,
        0.1253566902628852,
        2.372710620e-26,
        2.818732841e-22,
        0.01201214561729989,
        0.006875849760911001,
        2.064157910e-23,
        6.601587090e-11,
        0.001608306592372963,
        0.001017994683287104,
        6.728831293e-11,
        3.682448595e-11,
        2.949853019e-6,
        0.00003713656497,
    }};
    return p;
}

// Classical degree-4 comparison polynomial 8(0.9126+cos phi)^2(0.2766+cos phi)^2
// expanded into the cosine basis; non-negative by construction.  Used to
// reproduce the earlier degree-4 constant regime (C1 near 12.55).
inline const TrigPoly& comparison_degree4() {
    static const TrigPoly p{4, {
        11.18593552,
        19.073344,
        11.67618784,
        4.7568,
        1.0,
    }};
    return p;
}

} // namespace zfr
