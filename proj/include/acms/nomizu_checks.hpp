#pragma once

#include "acms/bundle.hpp"
#include "acms/nomizu.hpp"

#include <algorithm>
#include <array>

namespace acms {

// Residuals of the nine connection formulas on the canonical frame, maximised over all roots:
// (0) L(X0,X0)=0  (1) L(X0,X')=(c-a/2)Y'  (2) L(X',X0)=-(a/2)Y'  (3) L(X0,Y')=-(c-a/2)X'
// (4) L(Y',X0)=(a/2)X'  (5) L(X',Y')=(a/2)X0  (6) L(Y',X')=-(a/2)X0  (7) L(X',X')=0  (8) L(Y',Y')=0
std::array<double, 9> verify_connection_table(const CircleBundle& bundle, const NomizuConnection& conn);
std::array<double, 9> verify_connection_table(const CircleBundle& bundle);

// |U(X0,X'_alpha) - 1/2 (c - a) Y'_alpha| maximised over roots.
double reeb_u_residual(const CircleBundle& bundle, const NomizuConnection& conn);

struct ONeillResiduals {
    double horizontal = 0.0;  // <R~(X,Y)Z,W> against the base curvature and the A-terms
    double mixed = 0.0;       // <R~(X,Y)Z,xi>
    double vertical = 0.0;    // <R~(X,xi)Y,xi> = -<(nabla_xi A)_X Y, xi> - <A_X xi, A_Y xi>
    // Display form -<nabla_xi nabla_X Y, xi> + <nabla_xi X, nabla_Y xi> - <nabla_xi Y, nabla_X xi> with
    // frame fields; it misses -<nabla_X xi, nabla_Y xi> and is reported for information only.
    double vertical_as_printed = 0.0;
    double max() const { return std::max({horizontal, mixed, vertical}); }
};
// Horizontal vectors are identified with m at the origin; the base frame index p is
// index p+1 of the total frame.
ONeillResiduals oneill_check(const NomizuConnection& total, const NomizuConnection& base);

// Killing equation for xi: g(L(X,X0),Y) + g(X,L(Y,X0)).
double killing_residual(const NomizuConnection& conn);

}  // namespace acms
