#pragma once

#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>

namespace mtss {

/// Wrapper that marks a value as the error alternative of a Result.
template <class E>
struct Failure {
  E error;
};

template <class E>
Failure<std::decay_t<E>> fail(E&& error) {
  return {std::forward<E>(error)};
}

/// Value-or-error return type used across the library (a minimal stand-in
/// for std::expected, which is C++23).
template <class T, class E>
class Result {
 public:
  Result(T value) : storage_(std::in_place_index<0>, std::move(value)) {}
  Result(Failure<E> failure) : storage_(std::in_place_index<1>, std::move(failure.error)) {}

  bool ok() const noexcept { return storage_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  T& value() & {
    if (!ok()) throw std::logic_error("Result::value() called on an error");
    return std::get<0>(storage_);
  }
  const T& value() const& {
    if (!ok()) throw std::logic_error("Result::value() called on an error");
    return std::get<0>(storage_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Result::value() called on an error");
    return std::get<0>(std::move(storage_));
  }

  E& error() & {
    if (ok()) throw std::logic_error("Result::error() called on a value");
    return std::get<1>(storage_);
  }
  const E& error() const& {
    if (ok()) throw std::logic_error("Result::error() called on a value");
    return std::get<1>(storage_);
  }

  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }
  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }

 private:
  std::variant<T, E> storage_;
};

}  // namespace mtss
