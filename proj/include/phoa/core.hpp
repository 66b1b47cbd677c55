// Copyright 2026 The phoa-engine Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PHOA_CORE_HPP
#define PHOA_CORE_HPP

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phoa {

/// Base of every error the engine throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed tables: indices out of range, ill-typed entries.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Well-formed data whose equational laws fail (functoriality, associativity, ...).
class LawError : public Error {
public:
  using Error::Error;
};

/// A name in a model file that does not resolve.
class ReferenceError : public Error {
public:
  using Error::Error;
};

/// A model file whose JSON shape is wrong.
class SchemaError : public Error {
public:
  using Error::Error;
};

/// An operation called outside its domain (e.g. σ on an inconsistent interval).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Enumeration or construction exceeded the configured budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// Two routes that must agree did not. Always a bug in the engine.
class InternalError : public Error {
public:
  using Error::Error;
};

/// Process-wide size guards. Set once by the CLI; read everywhere.
struct Limits {
  std::atomic<std::size_t> max_elements{100000};
  std::atomic<std::size_t> max_nat_nodes{1000000};
};

inline Limits& limits() {
  static Limits l;
  return l;
}

inline void require_element_budget(std::size_t n, const std::string& what) {
  if (n > limits().max_elements.load())
    throw BudgetExceeded(what + ": " + std::to_string(n) + " elements exceeds --max-elements " +
                         std::to_string(limits().max_elements.load()));
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) hash_combine(h, static_cast<std::size_t>(x));
    return h;
  }
};

enum class Status { pass, fail, skip };

inline const char* to_string(Status s) {
  switch (s) {
  case Status::pass: return "pass";
  case Status::fail: return "fail";
  case Status::skip: return "skip";
  }
  return "?";
}

/// Element coordinates of a failure, sufficient to replay it.
struct Witness {
  std::string kind;
  int stage = -1;         // object index of the base category, -1 when global
  std::string object;     // display label of the stage
  std::vector<int> elements;
  std::string detail;

  bool operator==(const Witness&) const = default;
};

struct CheckReport {
  std::string name;
  Status status = Status::pass;
  std::optional<Witness> witness;
  std::string reason;  // set for skip
  std::vector<std::pair<std::string, std::string>> facts;
  double millis = 0.0;

  static CheckReport passed(std::string name) {
    CheckReport r;
    r.name = std::move(name);
    return r;
  }
  static CheckReport failed(std::string name, Witness w) {
    CheckReport r;
    r.name = std::move(name);
    r.status = Status::fail;
    r.witness = std::move(w);
    return r;
  }
  static CheckReport skipped(std::string name, std::string reason) {
    CheckReport r;
    r.name = std::move(name);
    r.status = Status::skip;
    r.reason = std::move(reason);
    return r;
  }

  bool is_pass() const { return status == Status::pass; }
  bool is_fail() const { return status == Status::fail; }
  CheckReport& fact(std::string key, std::string value) {
    facts.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

/// Runs `body`, stamping the elapsed wall time onto the report it returns.
template <class Body>
CheckReport timed(Body&& body) {
  auto start = std::chrono::steady_clock::now();
  CheckReport r = body();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::string join_ints(std::span<const int> xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace phoa

#endif  // PHOA_CORE_HPP
