#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "sat2qubo/error.hpp"

namespace sat2qubo {

/// Binary assignment x of a QUBO, one byte per bit (0 or 1).
using BitVector = std::vector<std::uint8_t>;

/// "0101..." with x_0 first.
std::string to_bitstring(std::span<const std::uint8_t> x);
/// Throws ParseError on characters other than '0' / '1'.
BitVector from_bitstring(std::string_view s);

/*
 * Sparse upper-triangular QUBO matrix Q with H(x) = sum_i Q_ii x_i + sum_{i<j} Q_ij x_i x_j.
 *
 * Only cells with i <= j are stored, and a cell whose accumulated weight
 * reaches exactly zero is erased, so the entry count is a structural metric.
 */
template <typename Scalar>
class BasicQuboMatrix {
 public:
  using Index = std::size_t;
  using Cell = std::pair<Index, Index>;
  using Entries = std::map<Cell, Scalar>;

  BasicQuboMatrix() = default;
  explicit BasicQuboMatrix(Index k) : k_(k) {}

  Index size() const { return k_; }
  const Entries& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  /// Q_ij += w. Requires i <= j < size(); lower-triangle writes are rejected,
  /// not transposed.
  void add(Index i, Index j, Scalar w) {
    if (i > j) {
      throw Error("QUBO add(" + std::to_string(i) + ", " + std::to_string(j) +
                  "): lower-triangle cell");
    }
    if (j >= k_) {
      throw Error("QUBO add(" + std::to_string(i) + ", " + std::to_string(j) +
                  "): index out of range for k=" + std::to_string(k_));
    }
    if (w == Scalar{0}) return;
    auto [it, inserted] = entries_.try_emplace(Cell{i, j}, w);
    if (!inserted) {
      it->second += w;
      if (it->second == Scalar{0}) entries_.erase(it);
    }
  }

  /// Symmetric convenience: orders (i, j) before adding. For stencils whose
  /// slots map to arbitrary qubit indices.
  void add_sym(Index i, Index j, Scalar w) {
    if (i > j) std::swap(i, j);
    add(i, j, w);
  }

  Scalar operator()(Index i, Index j) const {
    auto it = entries_.find(Cell{i, j});
    return it == entries_.end() ? Scalar{0} : it->second;
  }

  /// Cellwise stacking; both operands must have the same size.
  BasicQuboMatrix& operator+=(const BasicQuboMatrix& other) {
    if (other.k_ != k_) throw Error("QUBO stacking: size mismatch");
    for (const auto& [cell, w] : other.entries_) add(cell.first, cell.second, w);
    return *this;
  }

  friend BasicQuboMatrix operator+(BasicQuboMatrix a, const BasicQuboMatrix& b) {
    a += b;
    return a;
  }

  friend bool operator==(const BasicQuboMatrix&, const BasicQuboMatrix&) = default;

 private:
  Index k_ = 0;
  Entries entries_;
};

using QuboMatrix = BasicQuboMatrix<std::int64_t>;
using QuboMatrixd = BasicQuboMatrix<double>;

/// H(x). Throws when |x| != k.
template <typename Scalar>
Scalar energy(const BasicQuboMatrix<Scalar>& q, std::span<const std::uint8_t> x) {
  if (x.size() != q.size()) {
    throw Error("energy: bit vector has length " + std::to_string(x.size()) +
                ", matrix has k=" + std::to_string(q.size()));
  }
  Scalar h{0};
  for (const auto& [cell, w] : q.entries()) {
    if (x[cell.first] && x[cell.second]) h += w;
  }
  return h;
}

/// Number of stored strictly off-diagonal entries.
template <typename Scalar>
std::size_t coupling_count(const BasicQuboMatrix<Scalar>& q) {
  return static_cast<std::size_t>(std::count_if(
      q.entries().begin(), q.entries().end(),
      [](const auto& e) { return e.first.first != e.first.second; }));
}

/// Dense upper-triangular copy, for printing and dense cross-checks.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense(
    const BasicQuboMatrix<Scalar>& q) {
  const auto k = static_cast<Eigen::Index>(q.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(k, k);
  for (const auto& [cell, w] : q.entries()) {
    d(static_cast<Eigen::Index>(cell.first), static_cast<Eigen::Index>(cell.second)) = w;
  }
  return d;
}

/// Inverse of to_dense; the strict lower triangle must be zero.
template <typename Derived>
BasicQuboMatrix<typename Derived::Scalar> from_dense(const Eigen::MatrixBase<Derived>& d) {
  using Scalar = typename Derived::Scalar;
  if (d.rows() != d.cols()) throw Error("from_dense: matrix is not square");
  BasicQuboMatrix<Scalar> q(static_cast<std::size_t>(d.rows()));
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (d(i, j) == Scalar{0}) continue;
      if (i > j) throw Error("from_dense: non-zero entry below the diagonal");
      q.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j), d(i, j));
    }
  }
  return q;
}

// JSON: {"k": int, "entries": [[i, j, w], ...]} with entries sorted by (i, j).

template <typename Scalar>
nlohmann::ordered_json to_json_value(const BasicQuboMatrix<Scalar>& q) {
  nlohmann::ordered_json doc;
  doc["k"] = q.size();
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [cell, w] : q.entries()) {
    entries.push_back(nlohmann::ordered_json::array({cell.first, cell.second, w}));
  }
  doc["entries"] = std::move(entries);
  return doc;
}

template <typename Scalar>
std::string to_json(const BasicQuboMatrix<Scalar>& q) {
  return to_json_value(q).dump();
}

template <typename Scalar = std::int64_t, typename Json>
BasicQuboMatrix<Scalar> qubo_from_json_value(const Json& doc) {
  if (!doc.is_object() || !doc.contains("k") || !doc.contains("entries")) {
    throw ParseError("QUBO JSON: expected object with \"k\" and \"entries\"");
  }
  const auto& kj = doc.at("k");
  if (!kj.is_number_integer() || kj.template get<std::int64_t>() < 0) {
    throw ParseError("QUBO JSON: \"k\" must be a non-negative integer");
  }
  const auto k = kj.template get<std::size_t>();
  const auto& entries = doc.at("entries");
  if (!entries.is_array()) throw ParseError("QUBO JSON: \"entries\" must be an array");

  BasicQuboMatrix<Scalar> q(k);
  std::map<std::pair<std::size_t, std::size_t>, bool> seen;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number()) {
      throw ParseError("QUBO JSON: each entry must be [i, j, w]");
    }
    const auto i = e[0].template get<std::int64_t>();
    const auto j = e[1].template get<std::int64_t>();
    if (i < 0 || j < 0) throw ParseError("QUBO JSON: negative index");
    if (i > j) throw ParseError("QUBO JSON: lower-triangle entry");
    if (static_cast<std::size_t>(j) >= k) throw ParseError("QUBO JSON: index >= k");
    const std::pair<std::size_t, std::size_t> cell{static_cast<std::size_t>(i),
                                                   static_cast<std::size_t>(j)};
    if (!seen.emplace(cell, true).second) throw ParseError("QUBO JSON: duplicate entry");

    Scalar w{};
    if constexpr (std::is_integral_v<Scalar>) {
      if (e[2].is_number_integer()) {
        w = e[2].template get<Scalar>();
      } else {
        const double d = e[2].template get<double>();
        if (std::floor(d) != d) {
          throw ParseError("QUBO JSON: non-integer weight for an integer matrix");
        }
        w = static_cast<Scalar>(d);
      }
    } else {
      w = e[2].template get<Scalar>();
    }
    q.add(cell.first, cell.second, w);
  }
  return q;
}

template <typename Scalar = std::int64_t>
BasicQuboMatrix<Scalar> qubo_from_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("QUBO JSON: ") + e.what());
  }
  return qubo_from_json_value<Scalar>(doc);
}

}  // namespace sat2qubo
