#pragma once

#include <stdexcept>
#include <string>

namespace su11 {

// Series summation hit its term budget before meeting the relative
// tolerance. The partial sum accumulated so far is attached.
class SeriesNonConvergence : public std::runtime_error {
public:
    SeriesNonConvergence(const std::string& what, double partial_sum, int terms_used)
        : std::runtime_error(what), partial_sum(partial_sum), terms_used(terms_used) {}

    double partial_sum;
    int terms_used;
};

// |d<S>/dtheta| fell below the resolvable floor: the sensitivity
// diverges at this operating point.
class DerivativeVanishes : public std::runtime_error {
public:
    explicit DerivativeVanishes(const std::string& what) : std::runtime_error(what) {}
};

// The splitter configuration zeroes the signal path identically in
// theta (not just at isolated points), e.g. |alpha' beta| = |alpha beta'|
// in the symmetric homodyne arrangement.
class ConfigurationDegenerate : public std::runtime_error {
public:
    explicit ConfigurationDegenerate(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace su11
