#include "montest/functions.hpp"

#include <algorithm>
#include <cmath>

#include "montest/errors.hpp"

namespace montest {

bool QueryOracle::operator()(const Point& x) {
  ++queries_;
  const std::size_t w = weight(x);
  min_weight_ = std::min(min_weight_, w);
  max_weight_ = std::max(max_weight_, w);
  return f_.eval(x);
}

TruthTable::TruthTable(std::size_t n, std::vector<std::uint8_t> values) : n_(n), values_(std::move(values)) {
  if (n > kMaxTableDimension) {
    throw TableTooLarge("truth tables support n <= " + std::to_string(kMaxTableDimension) + ", got " +
                        std::to_string(n));
  }
  if (values_.size() != (std::size_t{1} << n)) {
    throw PreconditionError("truth table length must be 2^n");
  }
  for (auto& v : values_) v = v != 0 ? 1 : 0;
}

TruthTable TruthTable::constant(std::size_t n, bool value) {
  if (n > kMaxTableDimension) throw TableTooLarge("constant table too large");
  return TruthTable(n, std::vector<std::uint8_t>(std::size_t{1} << n, value ? 1 : 0));
}

TruthTable TruthTable::tabulate(const BooleanFunction& f) {
  const std::size_t n = f.n();
  if (n > kMaxTableDimension) {
    throw TableTooLarge("cannot tabulate a function of " + std::to_string(n) + " variables");
  }
  return from_index_fn(n, [&](std::uint64_t i) { return f.eval(Point::from_word(n, i)); });
}

bool TruthTable::eval(const Point& x) const {
  if (x.n() != n_) throw DimensionMismatch(x.n(), n_);
  return values_[n_ == 0 ? 0 : x.packed()] != 0;
}

std::size_t TruthTable::ones_count() const {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

Ltf::Ltf(std::vector<double> weights, double threshold)
    : weights_(std::move(weights)), threshold_(threshold) {
  if (weights_.empty()) throw PreconditionError("an LTF needs at least one weight");
  for (double w : weights_) {
    if (!std::isfinite(w)) throw PreconditionError("LTF weights must be finite");
  }
  if (!std::isfinite(threshold_)) throw PreconditionError("LTF threshold must be finite");
  degenerate_ = std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 0.0; });
}

double Ltf::margin(const Point& x) const {
  if (x.n() != weights_.size()) throw DimensionMismatch(x.n(), weights_.size());
  double sum = 0.0;
  auto ws = x.words();
  const std::size_t n = weights_.size();
  for (std::size_t w = 0; w < ws.size(); ++w) {
    const std::uint64_t bits = ws[w];
    const std::size_t base = w * 64;
    const std::size_t end = std::min<std::size_t>(64, n - base);
    for (std::size_t b = 0; b < end; ++b) {
      const double wi = weights_[base + b];
      sum += ((bits >> b) & 1ULL) ? wi : -wi;
    }
  }
  return sum - threshold_;
}

bool Ltf::eval(const Point& x) const { return margin(x) >= 0.0; }

double regularity_parameter(std::span<const double> weights) {
  double max_abs = 0.0;
  double sq = 0.0;
  for (double w : weights) {
    max_abs = std::max(max_abs, std::abs(w));
    sq += w * w;
  }
  if (sq == 0.0) throw PreconditionError("regularity_parameter: zero weight vector");
  return max_abs / std::sqrt(sq);
}

TalagrandDnf::TalagrandDnf(std::size_t n, std::vector<std::vector<Coord>> clauses)
    : n_(n), words_((n + 63) / 64), clauses_(std::move(clauses)) {
  if (n == 0) throw PreconditionError("TalagrandDnf needs n >= 1");
  if (clauses_.empty()) throw PreconditionError("TalagrandDnf needs at least one clause");
  masks_.assign(clauses_.size() * words_, 0);
  for (std::size_t j = 0; j < clauses_.size(); ++j) {
    if (clauses_[j].empty()) throw PreconditionError("TalagrandDnf clauses must be nonempty");
    for (Coord v : clauses_[j]) {
      if (v < 1 || v > n) {
        throw PreconditionError("clause entry " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
      }
      masks_[j * words_ + (v - 1) / 64] |= 1ULL << ((v - 1) % 64);
    }
  }
}

bool TalagrandDnf::eval(const Point& x) const {
  if (x.n() != n_) throw DimensionMismatch(x.n(), n_);
  auto xs = x.words();
  const std::uint64_t* mask = masks_.data();
  for (std::size_t j = 0; j < clauses_.size(); ++j, mask += words_) {
    bool sat = true;
    for (std::size_t w = 0; w < words_; ++w) {
      if ((xs[w] & mask[w]) != mask[w]) {
        sat = false;
        break;
      }
    }
    if (sat) return true;
  }
  return false;
}

VarSet TalagrandDnf::variables() const {
  VarSet s(n_);
  for (const auto& c : clauses_) {
    for (Coord v : c) s.set(v);
  }
  return s;
}

ShiftedFunction::ShiftedFunction(FunctionPtr inner, VarSet shift) : inner_(std::move(inner)), shift_(std::move(shift)) {
  if (!inner_) throw PreconditionError("ShiftedFunction: null inner function");
  if (shift_.n() != inner_->n()) throw DimensionMismatch(shift_.n(), inner_->n());
}

TruncatedFunction::TruncatedFunction(FunctionPtr inner, double delta) : inner_(std::move(inner)), delta_(delta) {
  if (!inner_) throw PreconditionError("TruncatedFunction: null inner function");
  if (!(delta >= 0.0)) throw PreconditionError("truncation radius must be nonnegative");
  const double n = static_cast<double>(inner_->n());
  lower_ = n / 2.0 - delta * std::sqrt(n);
  upper_ = n / 2.0 + delta * std::sqrt(n);
}

bool TruncatedFunction::eval(const Point& x) const {
  const double w = static_cast<double>(weight(x));
  if (w < lower_) return false;
  if (w > upper_) return true;
  return inner_->eval(x);
}

}  // namespace montest
