// Error types. Numerical failures carry enough context (site, horizon,
// condition number) for a caller to reroute: a sweep driver downgrades them
// to per-row statuses, while library users get a typed catch.

#pragma once

#include <stdexcept>
#include <string>

namespace weyl {

// Base class for all library failures.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A matrix that must be inverted has condition number above the cap
// (or is exactly rank deficient).
class singular_error : public error {
  public:
    singular_error(const std::string& what, double condition)
        : error(what), condition_(condition) {}
    double condition() const { return condition_; }

  private:
    double condition_;
};

// Transfer-matrix entries exceeded the growth cap; carries the last usable
// site so callers can retry with a shorter horizon or the resolvent route.
class growth_error : public error {
  public:
    growth_error(const std::string& what, int site, double magnitude)
        : error(what), site_(site), magnitude_(magnitude) {}
    int site() const { return site_; }
    double magnitude() const { return magnitude_; }

  private:
    int site_;
    double magnitude_;
};

// A requested dimension exceeds a configured size cap.
class size_cap_error : public error {
  public:
    explicit size_cap_error(const std::string& what) : error(what) {}
};

// An input sequence fails a stated precondition; carries the worst site.
class precondition_error : public error {
  public:
    precondition_error(const std::string& what, int site)
        : error(what), site_(site) {}
    int site() const { return site_; }

  private:
    int site_;
};

// gamma-reduction is impossible because beta1 is singular.
class not_reducible_error : public error {
  public:
    explicit not_reducible_error(const std::string& what) : error(what) {}
};

}  // namespace weyl
