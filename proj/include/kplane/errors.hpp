#pragma once

#include <stdexcept>
#include <string>

namespace kplane {

// Parameter outside the closed admissible region of the relevant theorem or
// lemma. The message names the violated bound.
class admissibility_error : public std::domain_error {
public:
    explicit admissibility_error(const std::string& what) : std::domain_error(what) {}
};

// Caller broke an API contract (inconsistent nu, offset not orthogonal to the
// frame, ...). Distinct from admissibility so callers can tell a bad request
// from a bad parameter regime.
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

// A quadrature rule exhausted its refinement budget with the error estimate
// still above tolerance.
class accuracy_error : public std::runtime_error {
public:
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

// Hemispherical representation requested for a plane through the origin.
class degenerate_plane_error : public std::invalid_argument {
public:
    explicit degenerate_plane_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace kplane
