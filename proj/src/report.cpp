// Copyright 2026 The relmol Authors
// SPDX-License-Identifier: Apache-2.0

#include "relmol/report.hpp"

#include <numeric>

#include "relmol/error.hpp"

namespace relmol {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

double ReportEntry::input(const std::string& name) const {
  for (const auto& in : inputs) {
    if (in.name == name) return in.value;
  }
  throw DomainError("report entry '" + id + "' has no input '" + name + "'");
}

bool Report::all_passed() const {
  for (const auto& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

ReportEntry& Report::add_value(std::string id, double value, std::string units, std::string formula) {
  ReportEntry e;
  e.id = std::move(id);
  e.value = value;
  e.units = std::move(units);
  e.formula = std::move(formula);
  return add(std::move(e));
}

Check& Report::add_check(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back();
}

ReportEntry& Report::add(ReportEntry e) {
  entries_.push_back(std::move(e));
  return entries_.back();
}

const ReportEntry* Report::find(const std::string& id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const ReportEntry& Report::at(const std::string& id) const {
  if (const ReportEntry* e = find(id)) return *e;
  throw DomainError("report has no entry '" + id + "'");
}

void Report::append(const Report& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

}  // namespace relmol
