#pragma once

// Boolean function oracles. Every oracle answers in {0,1} (true = 1); the
// LTF's internal {-1,+1} output is mapped -1 -> 0, +1 -> 1 at eval().

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "montest/hypercube.hpp"

namespace montest {

class BooleanFunction {
 public:
  virtual ~BooleanFunction() = default;
  virtual std::size_t n() const = 0;
  virtual bool eval(const Point& x) const = 0;
  virtual std::string kind() const = 0;
};

using FunctionPtr = std::shared_ptr<const BooleanFunction>;

// Per-run query accounting. Counts every eval and tracks the Hamming-weight
// range of queried points. Never shared between concurrent runs.
class QueryOracle {
 public:
  explicit QueryOracle(const BooleanFunction& f) : f_(f) {}

  bool operator()(const Point& x);

  const BooleanFunction& function() const { return f_; }
  std::size_t n() const { return f_.n(); }
  std::uint64_t queries() const { return queries_; }
  std::size_t min_weight() const { return min_weight_; }
  std::size_t max_weight() const { return max_weight_; }

 private:
  const BooleanFunction& f_;
  std::uint64_t queries_ = 0;
  std::size_t min_weight_ = std::numeric_limits<std::size_t>::max();
  std::size_t max_weight_ = 0;
};

// Decorator counting eval calls through a mutable counter. Single-threaded
// use only; intended for cross-checking query accounting.
class CountingFunction final : public BooleanFunction {
 public:
  explicit CountingFunction(const BooleanFunction& inner) : inner_(inner) {}
  std::size_t n() const override { return inner_.n(); }
  bool eval(const Point& x) const override {
    ++calls_;
    return inner_.eval(x);
  }
  std::string kind() const override { return inner_.kind(); }
  std::uint64_t calls() const { return calls_; }
  void reset() { calls_ = 0; }

 private:
  const BooleanFunction& inner_;
  mutable std::uint64_t calls_ = 0;
};

inline constexpr std::size_t kMaxTableDimension = 24;

class TruthTable final : public BooleanFunction {
 public:
  TruthTable(std::size_t n, std::vector<std::uint8_t> values);

  static TruthTable constant(std::size_t n, bool value);
  static TruthTable tabulate(const BooleanFunction& f);
  template <class Fn>
  static TruthTable from_index_fn(std::size_t n, Fn&& fn) {
    std::vector<std::uint8_t> v(std::size_t{1} << n);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(static_cast<std::uint64_t>(i)) ? 1 : 0;
    return TruthTable(n, std::move(v));
  }

  std::size_t n() const override { return n_; }
  bool eval(const Point& x) const override;
  std::string kind() const override { return "truth_table"; }

  // Index = packed point word (coordinate i at bit i-1).
  bool at(std::uint64_t index) const { return values_[index] != 0; }
  std::size_t size() const { return values_.size(); }
  std::span<const std::uint8_t> values() const { return values_; }
  std::size_t ones_count() const;

  friend bool operator==(const TruthTable& a, const TruthTable& b) {
    return a.n_ == b.n_ && a.values_ == b.values_;
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> values_;
};

// f(x) = 1 iff sum_i w_i * x~_i - theta >= 0, x~ the {-1,+1} view. The tie
// resolves to 1 (sgn(0) = +1).
class Ltf final : public BooleanFunction {
 public:
  Ltf(std::vector<double> weights, double threshold = 0.0);

  std::size_t n() const override { return weights_.size(); }
  bool eval(const Point& x) const override;
  std::string kind() const override { return "ltf"; }

  // sum_i w_i x~_i - theta, accumulated in coordinate order.
  double margin(const Point& x) const;
  // The internal {-1,+1} output.
  int sign_output(const Point& x) const { return eval(x) ? 1 : -1; }

  std::span<const double> weights() const { return weights_; }
  double threshold() const { return threshold_; }
  // All weights zero: the function is constant (1 iff theta <= 0).
  bool degenerate() const { return degenerate_; }

 private:
  std::vector<double> weights_;
  double threshold_;
  bool degenerate_;
};

// max_i |w_i| / ||w||_2. An LTF with these weights is tau-regular iff the
// result is <= tau. Throws PreconditionError on the zero vector.
double regularity_parameter(std::span<const double> weights);

// Disjunction of clauses; each clause is a sequence of 1-indexed variables
// (a map [width] -> [n], repeats allowed) read as a conjunction.
class TalagrandDnf final : public BooleanFunction {
 public:
  TalagrandDnf(std::size_t n, std::vector<std::vector<Coord>> clauses);

  std::size_t n() const override { return n_; }
  bool eval(const Point& x) const override;
  std::string kind() const override { return "talagrand_dnf"; }

  std::size_t width() const { return clauses_.front().size(); }
  std::size_t clause_count() const { return clauses_.size(); }
  const std::vector<std::vector<Coord>>& clauses() const { return clauses_; }
  // Union of all clause variables.
  VarSet variables() const;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::vector<Coord>> clauses_;
  std::vector<std::uint64_t> masks_;  // clause_count * words_, row-major
};

// g(x) = inner(x^S).
class ShiftedFunction final : public BooleanFunction {
 public:
  ShiftedFunction(FunctionPtr inner, VarSet shift);

  std::size_t n() const override { return inner_->n(); }
  bool eval(const Point& x) const override { return inner_->eval(montest::shift(x, shift_)); }
  std::string kind() const override { return "shifted"; }

  const FunctionPtr& inner() const { return inner_; }
  const VarSet& shift_set() const { return shift_; }

 private:
  FunctionPtr inner_;
  VarSet shift_;
};

// 0 when |x| < n/2 - delta*sqrt(n), 1 when |x| > n/2 + delta*sqrt(n), inner(x)
// in between.
class TruncatedFunction final : public BooleanFunction {
 public:
  TruncatedFunction(FunctionPtr inner, double delta);

  std::size_t n() const override { return inner_->n(); }
  bool eval(const Point& x) const override;
  std::string kind() const override { return "truncated"; }

  const FunctionPtr& inner() const { return inner_; }
  double delta() const { return delta_; }
  double lower_edge() const { return lower_; }
  double upper_edge() const { return upper_; }

 private:
  FunctionPtr inner_;
  double delta_;
  double lower_;
  double upper_;
};

// JSON document: {"kind": ..., "n": ..., ...}. Truth tables carry a hex
// string whose binary expansion lists the table in index order (entry 0 is
// the most significant bit of the first digit); wrappers nest "inner".
std::string serialize(const BooleanFunction& f);
FunctionPtr deserialize(std::string_view json_text);

std::string table_to_hex(const TruthTable& t);
TruthTable table_from_hex(std::size_t n, std::string_view hex);

}  // namespace montest
