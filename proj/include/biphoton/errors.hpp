#pragma once

#include <stdexcept>
#include <string>

// ---- error taxonomy ----
//
// Three top-level families, matching the three ways a run can go wrong:
//
//   config_error   the request itself is malformed (bad key, bad value, missing
//                  calibration data).  Maps to CLI exit code 2.
//   numeric_error  the request is well-formed but the computation cannot
//                  deliver a trustworthy answer (evanescent branch, quadrature
//                  not converged, zero-norm input, Nyquist violation, no poling
//                  root).  Maps to CLI exit code 3.
//   io_error       the filesystem or a file format let us down.  Exit code 4.
//
// The leaf classes exist so tests can assert the *reason* a call failed, not
// just that it threw something.

namespace biphoton {

class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// a transverse momentum large enough that the longitudinal wavenumber would be
// imaginary; the plane-wave decomposition has no propagating component there
class evanescent_error : public numeric_error {
public:
    explicit evanescent_error(const std::string& what) : numeric_error(what) {}
};

// adaptive quadrature exhausted its refinement budget without meeting the
// requested tolerance
class convergence_error : public numeric_error {
public:
    explicit convergence_error(const std::string& what) : numeric_error(what) {}
};

// a spectrum with (numerically) zero L2 norm cannot be normalized or fed to
// the interference map
class zero_norm_error : public numeric_error {
public:
    explicit zero_norm_error(const std::string& what) : numeric_error(what) {}
};

// the tau grid is too coarse to resolve the fastest interference fringe
// implied by the temperature range
class nyquist_error : public numeric_error {
public:
    explicit nyquist_error(const std::string& what) : numeric_error(what) {}
};

// poling-period calibration has no solution, e.g. degenerate indices make the
// collinear mismatch independent of the poling vector sign
class no_root_error : public numeric_error {
public:
    explicit no_root_error(const std::string& what) : numeric_error(what) {}
};

} // namespace biphoton
