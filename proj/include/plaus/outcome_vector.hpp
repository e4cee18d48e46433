#pragma once

// Sparse rational vectors indexed by outcome id. Canonical form stores no
// explicit zeros, so equality is structural and serialization is stable.

#include <plaus/rational.hpp>

#include <map>
#include <string>
#include <vector>

namespace plaus {

class OutcomeVector {
public:
  using Entries = std::map<std::string, Rational>;

  OutcomeVector() = default;

  static OutcomeVector basis(const std::string& outcome) {
    OutcomeVector v;
    v.entries_[outcome] = 1;
    return v;
  }

  /// e_A = sum of basis vectors over a duplicate-free outcome list.
  static OutcomeVector indicator(const std::vector<std::string>& outcomes) {
    OutcomeVector v;
    for (const auto& x : outcomes) v.entries_[x] = 1;
    return v;
  }

  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Rational at(const std::string& outcome) const {
    auto it = entries_.find(outcome);
    return it == entries_.end() ? Rational(0) : it->second;
  }

  void set(const std::string& outcome, const Rational& value) {
    if (value == 0)
      entries_.erase(outcome);
    else
      entries_[outcome] = value;
  }

  void add_scaled(const OutcomeVector& other, const Rational& scale) {
    if (scale == 0) return;
    for (const auto& [key, value] : other.entries_) {
      auto it = entries_.find(key);
      if (it == entries_.end()) {
        entries_.emplace(key, value * scale);
      } else {
        it->second += value * scale;
        if (it->second == 0) entries_.erase(it);
      }
    }
  }

  OutcomeVector& operator+=(const OutcomeVector& other) {
    add_scaled(other, Rational(1));
    return *this;
  }
  OutcomeVector& operator-=(const OutcomeVector& other) {
    add_scaled(other, Rational(-1));
    return *this;
  }

  friend OutcomeVector operator+(OutcomeVector lhs, const OutcomeVector& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend OutcomeVector operator-(OutcomeVector lhs, const OutcomeVector& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend OutcomeVector operator*(const Rational& scale, const OutcomeVector& v) {
    OutcomeVector out;
    out.add_scaled(v, scale);
    return out;
  }
  friend OutcomeVector operator-(const OutcomeVector& v) {
    return Rational(-1) * v;
  }

  friend bool operator==(const OutcomeVector& a, const OutcomeVector& b) {
    return a.entries_ == b.entries_;
  }

  friend Rational dot(const OutcomeVector& a, const OutcomeVector& b) {
    // Walk the smaller map.
    const OutcomeVector& small = a.entries_.size() <= b.entries_.size() ? a : b;
    const OutcomeVector& large = a.entries_.size() <= b.entries_.size() ? b : a;
    Rational sum(0);
    for (const auto& [key, value] : small.entries_) {
      auto it = large.entries_.find(key);
      if (it != large.entries_.end()) sum += value * it->second;
    }
    return sum;
  }

  std::string str() const {
    if (entries_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, value] : entries_) {
      if (!first) out += " + ";
      out += to_string(value) + "*e_" + key;
      first = false;
    }
    return out;
  }

private:
  Entries entries_;
};

}  // namespace plaus
