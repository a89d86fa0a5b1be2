#pragma once

#include <stdexcept>
#include <string>

namespace rwm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input while reading graph data.
class LoadError : public Error {
public:
    using Error::Error;
};

/// Inconsistent layers or cross operators when assembling a MultiNetwork.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// A walker could not be seeded (some layer receives no initial mass).
class InitError : public Error {
public:
    InitError(std::size_t layer, const std::string& what)
        : Error(what), layer_(layer) {}
    std::size_t layer() const noexcept { return layer_; }

private:
    std::size_t layer_;
};

/// Parameters or arguments outside their documented domain.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace rwm
