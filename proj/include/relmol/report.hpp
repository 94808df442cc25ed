// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef RELMOL_REPORT_HPP
#define RELMOL_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace relmol {

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "p/q", or "p" when q == 1.
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational&, const Rational&) = default;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct ReportInput {
  std::string name;
  double value = 0.0;
  /// True for free constants whose value the underlying theory leaves open
  /// and which were left at their defaults.
  bool unset_by_paper = false;
};

struct ReportEntry {
  std::string id;
  double value = 0.0;
  std::optional<Rational> exact;
  std::string formula;
  std::vector<ReportInput> inputs;
  std::string units;
  std::string note;

  /// Value of a named input; throws DomainError when absent.
  double input(const std::string& name) const;
};

/// Outcome of one invariant check; `id` names the invariant.
struct Check {
  std::string id;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

class Report {
public:
  explicit Report(std::string title = {}) : title_(std::move(title)) {}

  const std::string& title() const { return title_; }
  const std::vector<ReportEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const std::vector<Check>& checks() const { return checks_; }
  bool all_passed() const;

  ReportEntry& add(ReportEntry e);
  /// Shorthand for a plain numeric result without inputs.
  ReportEntry& add_value(std::string id, double value, std::string units = {},
                         std::string formula = {});
  Check& add_check(Check c);
  /// Nullptr when no entry has this id.
  const ReportEntry* find(const std::string& id) const;
  /// Throws DomainError when no entry has this id.
  const ReportEntry& at(const std::string& id) const;
  void append(const Report& other);

private:
  std::string title_;
  std::vector<ReportEntry> entries_;
  std::vector<Check> checks_;
};

}  // namespace relmol

#endif  // RELMOL_REPORT_HPP
