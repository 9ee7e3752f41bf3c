#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "ras/geometry.hpp"

namespace ras {

// Known minimizer of a benchmark, used only for reporting and tests, never
// by the optimizer itself.
struct Optimum {
  Eigen::VectorXd point;
  double value = 0.0;
};

// A black-box minimization problem: a callable plus its domain.  Evaluation
// may return any double (including inf/nan, which the optimizer treats as a
// failed trial).
class Objective {
 public:
  using Fn = std::function<double(const Eigen::VectorXd&)>;

  Objective(std::string name, Fn fn, DomainBounds bounds,
            std::optional<Optimum> optimum = std::nullopt)
      : name_(std::move(name)),
        fn_(std::move(fn)),
        bounds_(std::move(bounds)),
        optimum_(std::move(optimum)) {}

  const std::string& name() const { return name_; }
  int dim() const { return bounds_.dim(); }
  const DomainBounds& bounds() const { return bounds_; }
  const std::optional<Optimum>& optimum() const { return optimum_; }

  double operator()(const Eigen::VectorXd& x) const { return fn_(x); }

 private:
  std::string name_;
  Fn fn_;
  DomainBounds bounds_;
  std::optional<Optimum> optimum_;
};

}  // namespace ras
