#pragma once

#include <vector>

// ---- Gauss-Legendre rules and panel decomposition ----
//
// The radial integrals all have the shape "smooth decaying envelope times a
// slow phase" after the s = r^2 substitution, so composite Gauss-Legendre
// panels sized against the local decay rate and phase rate converge at
// machine precision with modest orders.  Panel width is capped at
// min(0.5/decay, pi/(2 phase_rate)) so no panel spans more than half a decay
// length or a quarter oscillation.

namespace biphoton {

struct GLRule {
    std::vector<double> x; // nodes on [-1, 1]
    std::vector<double> w; // weights, sum = 2
};

// cached Gauss-Legendre rule of order n (Newton iteration on P_n)
const GLRule& gauss_legendre(int n);

struct PanelNodes {
    std::vector<double> s;
    std::vector<double> w;
};

// composite rule on [s0, s1]: subdivide into equal panels no wider than the
// decay/phase caps, order-n Gauss-Legendre on each
void panel_nodes(double s0, double s1, double decay, double phase_rate, int n,
                 PanelNodes& out);

} // namespace biphoton
