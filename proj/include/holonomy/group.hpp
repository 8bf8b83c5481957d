#pragma once

// Structure groups: cyclic Z_n and the quaternion group Q8 with exact
// arithmetic, U(1) and SU(2) in double precision.

#include "holonomy/error.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace holonomy {

enum class GroupKind { cyclic, quaternion8, u1, su2 };

struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
};

/// Element of one of the supported groups. Finite groups use an index:
/// k for Z_n, and 2*unit + negated for Q8 with units (1, i, j, k).
struct GroupElement {
  GroupKind kind = GroupKind::cyclic;
  std::uint32_t index = 0;
  double angle = 0;  // U(1), in [0, 2pi)
  Quaternion q;      // SU(2), unit norm

  static GroupElement finite(GroupKind kind, std::uint32_t index) { return {kind, index, 0, {}}; }
  static GroupElement from_angle(double theta) {
    double t = std::fmod(theta, 2 * std::numbers::pi);
    if (t < 0) t += 2 * std::numbers::pi;
    return {GroupKind::u1, 0, t, {}};
  }
  static GroupElement from_quaternion(const Quaternion& q) { return {GroupKind::su2, 0, 0, q.normalized()}; }
};

class Group {
 public:
  static Group cyclic(std::uint32_t n) {
    if (n < 1) throw input_error("cyclic group order must be at least 1");
    return Group(GroupKind::cyclic, n);
  }
  static Group quaternion8() { return Group(GroupKind::quaternion8, 8); }
  static Group u1() { return Group(GroupKind::u1, 0); }
  static Group su2() { return Group(GroupKind::su2, 0); }

  /// "Z<n>", "Q8", "U1" or "SU2".
  static Group parse(const std::string& tag) {
    if (tag == "Q8") return quaternion8();
    if (tag == "U1") return u1();
    if (tag == "SU2") return su2();
    if (tag.size() > 1 && tag[0] == 'Z') {
      std::uint32_t n = 0;
      for (std::size_t i = 1; i < tag.size(); ++i) {
        if (tag[i] < '0' || tag[i] > '9' || n > 100000) throw input_error("unknown group '" + tag + "'");
        n = n * 10 + static_cast<std::uint32_t>(tag[i] - '0');
      }
      return cyclic(n);
    }
    throw input_error("unknown group '" + tag + "'");
  }

  GroupKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == GroupKind::cyclic || kind_ == GroupKind::quaternion8; }
  std::uint32_t order() const {
    if (!is_finite()) throw input_error(name() + " is not finite");
    return order_;
  }
  double tolerance() const { return tolerance_; }
  void set_tolerance(double tol) { tolerance_ = tol; }

  std::string name() const {
    switch (kind_) {
      case GroupKind::cyclic: return "Z" + std::to_string(order_);
      case GroupKind::quaternion8: return "Q8";
      case GroupKind::u1: return "U1";
      case GroupKind::su2: return "SU2";
    }
    return "?";
  }

  friend bool operator==(const Group& a, const Group& b) { return a.kind_ == b.kind_ && a.order_ == b.order_; }

  GroupElement identity() const {
    switch (kind_) {
      case GroupKind::u1: return GroupElement::from_angle(0);
      case GroupKind::su2: return GroupElement::from_quaternion({1, 0, 0, 0});
      default: return GroupElement::finite(kind_, 0);
    }
  }

  /// Element with the given index (finite groups only).
  GroupElement element(std::uint32_t index) const {
    if (index >= order()) throw input_error("element index out of range for " + name());
    return GroupElement::finite(kind_, index);
  }

  void check(const GroupElement& a) const {
    if (a.kind != kind_ || (is_finite() && a.index >= order_))
      throw group_mismatch_error("element does not belong to " + name());
  }

  GroupElement mul(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    switch (kind_) {
      case GroupKind::cyclic: return GroupElement::finite(kind_, (a.index + b.index) % order_);
      case GroupKind::quaternion8: return GroupElement::finite(kind_, q8_mul(a.index, b.index));
      case GroupKind::u1: return GroupElement::from_angle(a.angle + b.angle);
      case GroupKind::su2: return GroupElement::from_quaternion(a.q * b.q);
    }
    return a;
  }

  GroupElement inv(const GroupElement& a) const {
    check(a);
    switch (kind_) {
      case GroupKind::cyclic: return GroupElement::finite(kind_, (order_ - a.index) % order_);
      case GroupKind::quaternion8: return GroupElement::finite(kind_, a.index < 2 ? a.index : a.index ^ 1u);
      case GroupKind::u1: return GroupElement::from_angle(-a.angle);
      case GroupKind::su2: return GroupElement::from_quaternion(a.q.conjugate());
    }
    return a;
  }

  /// Exact for finite groups; within tolerance() for Lie groups. SU(2)
  /// compares quaternion components, so q and -q are distinct.
  bool equal(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    switch (kind_) {
      case GroupKind::u1: {
        const double d = std::fabs(a.angle - b.angle);
        return std::min(d, 2 * std::numbers::pi - d) <= tolerance_;
      }
      case GroupKind::su2:
        return std::fabs(a.q.w - b.q.w) <= tolerance_ && std::fabs(a.q.x - b.q.x) <= tolerance_ &&
               std::fabs(a.q.y - b.q.y) <= tolerance_ && std::fabs(a.q.z - b.q.z) <= tolerance_;
      default: return a.index == b.index;
    }
  }

  std::vector<GroupElement> enumerate() const {
    if (!is_finite()) throw input_error("cannot enumerate " + name());
    std::vector<GroupElement> out;
    for (std::uint32_t i = 0; i < order_; ++i) out.push_back(GroupElement::finite(kind_, i));
    return out;
  }

  template <class Rng>
  GroupElement haar_sample(Rng& rng) const {
    switch (kind_) {
      case GroupKind::u1: return GroupElement::from_angle(std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng));
      case GroupKind::su2: {
        std::normal_distribution<double> gauss;
        Quaternion q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        return GroupElement::from_quaternion(q);
      }
      default: return GroupElement::finite(kind_, std::uniform_int_distribution<std::uint32_t>(0, order_ - 1)(rng));
    }
  }

  /// Character of the defining representation: e^{2 pi i k/n} on Z_n, the
  /// trace 2w of the 2x2 representation on Q8 and SU(2), e^{i theta} on U(1).
  std::complex<double> trace(const GroupElement& a) const {
    check(a);
    switch (kind_) {
      case GroupKind::cyclic: {
        if ((4 * a.index) % order_ == 0) {
          static const std::complex<double> quarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
          return quarter[4 * a.index / order_];
        }
        return std::polar(1.0, 2 * std::numbers::pi * a.index / order_);
      }
      case GroupKind::quaternion8: return a.index == 0 ? 2.0 : a.index == 1 ? -2.0 : 0.0;
      case GroupKind::u1: return std::polar(1.0, a.angle);
      case GroupKind::su2: return 2 * a.q.w;
    }
    return 0;
  }

  /// Class function used for Wilson loops; the defining character.
  std::complex<double> class_value(const GroupElement& a) const { return trace(a); }

  /// Spin-1 character 4w^2 - 1 (Q8 and SU(2)).
  double chi_one(const GroupElement& a) const {
    check(a);
    if (kind_ != GroupKind::su2 && kind_ != GroupKind::quaternion8) throw input_error("chi_1 needs Q8 or SU2");
    const double w = kind_ == GroupKind::su2 ? a.q.w : (a.index == 0 ? 1.0 : a.index == 1 ? -1.0 : 0.0);
    return 4 * w * w - 1;
  }

  std::string format(const GroupElement& a) const {
    check(a);
    switch (kind_) {
      case GroupKind::cyclic: return std::to_string(a.index);
      case GroupKind::quaternion8: {
        static const char* names[] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
        return names[a.index];
      }
      case GroupKind::u1: return std::to_string(a.angle);
      case GroupKind::su2:
        return "[" + std::to_string(a.q.w) + "," + std::to_string(a.q.x) + "," + std::to_string(a.q.y) + "," +
               std::to_string(a.q.z) + "]";
    }
    return "?";
  }

  /// Q8 element from its name ("1", "-1", "i", "-i", "j", "-j", "k", "-k").
  GroupElement q8_from_name(const std::string& s) const {
    static const char* names[] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    for (std::uint32_t i = 0; i < 8; ++i)
      if (s == names[i]) return GroupElement::finite(GroupKind::quaternion8, i);
    throw input_error("unknown Q8 element '" + s + "'");
  }

 private:
  Group(GroupKind kind, std::uint32_t order) : kind_(kind), order_(order) {}

  static std::uint32_t q8_mul(std::uint32_t a, std::uint32_t b) {
    // unit products: row * column over (1, i, j, k), value 2*unit + negated
    static constexpr std::array<std::array<std::uint32_t, 4>, 4> table{{
        {0, 2, 4, 6},
        {2, 1, 6, 5},
        {4, 7, 1, 2},
        {6, 4, 3, 1},
    }};
    const std::uint32_t p = table[a / 2][b / 2];
    return p ^ ((a & 1u) ^ (b & 1u));
  }

  GroupKind kind_;
  std::uint32_t order_;
  double tolerance_ = 1e-9;
};

/// Product of the values along a signed word.
template <class Word, class Lookup>
GroupElement word_product(const Group& g, const Word& word, Lookup&& value_of) {
  GroupElement acc = g.identity();
  for (const auto& s : word) {
    const GroupElement& v = value_of(s.index);
    acc = g.mul(acc, s.sign > 0 ? v : g.inv(v));
  }
  return acc;
}

}  // namespace holonomy
