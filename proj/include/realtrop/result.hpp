#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace realtrop {

struct Error
{
    std::string message;
};

/// Value-or-error return for operations whose failure is an ordinary outcome
/// (invalid input, non-generic heights), as opposed to a broken invariant.
template <class T>
class Result
{
public:
    Result(T value) : v_(std::move(value)) {}
    Result(Error err) : v_(std::move(err)) {}

    bool has_value() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return has_value(); }

    const T& value() const&
    {
        if (!has_value())
            throw std::runtime_error(error().message);
        return std::get<T>(v_);
    }
    T&& value() &&
    {
        if (!has_value())
            throw std::runtime_error(error().message);
        return std::get<T>(std::move(v_));
    }
    const T& operator*() const& { return value(); }
    const T* operator->() const { return &value(); }

    const Error& error() const { return std::get<Error>(v_); }

private:
    std::variant<T, Error> v_;
};

}  // namespace realtrop
