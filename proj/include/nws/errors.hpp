#pragma once

#include <stdexcept>
#include <string>

namespace nws {

/// Invalid inputs, refused branches/poles and divergent integrals.
/// The CLI maps this class of failure to exit code 2.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An adaptive computation hit its subdivision cap before reaching the
/// requested tolerance and the result cannot be trusted downstream.
/// The CLI maps this class of failure to exit code 3.
class NonConvergedError : public std::runtime_error {
public:
    explicit NonConvergedError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nws
