#ifndef PLANE_BRANCH_ERRORS_HPP
#define PLANE_BRANCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plane_branch {

// Malformed or out-of-contract user input (bad branch, bad semigroup, violated precondition).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A mathematical invariant the algorithms rely on was observed to fail.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace plane_branch

#endif
