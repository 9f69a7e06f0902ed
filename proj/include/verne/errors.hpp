#ifndef VERNE_ERRORS_HPP
#define VERNE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace verne {

// Base class for all domain errors raised by the kinematics library.
class KinematicsError : public std::runtime_error {
 public:
  explicit KinematicsError(const std::string& msg) : std::runtime_error(msg) {}
};

// sin(alpha) = 0: the iso-orientation locus collapses to the segment y = 0.
// Carries the half-length of that segment (b is 0 by definition).
class DegenerateOrientation : public KinematicsError {
 public:
  DegenerateOrientation(double alpha, double segment_half_length)
      : KinematicsError("degenerate orientation: locus is the segment y = 0"),
        alpha(alpha),
        segment_half_length(segment_half_length) {}
  double alpha;
  double segment_half_length;
};

// Leg I cannot be assembled at the requested orientation (negative radicand).
class UnreachableOrientation : public KinematicsError {
 public:
  explicit UnreachableOrientation(double alpha)
      : KinematicsError("orientation not reachable by leg I"), alpha(alpha) {}
  double alpha;
};

// No orientation solves the coupling constraint at the given position.
class NoFeasibleOrientation : public KinematicsError {
 public:
  NoFeasibleOrientation() : KinematicsError("no feasible orientation") {}
};

// A leg's actuator equation has a negative radicand at the requested pose.
class UnreachablePose : public KinematicsError {
 public:
  explicit UnreachablePose(int leg)
      : KinematicsError("pose not reachable: leg " + std::to_string(leg) +
                        " radicand is negative"),
        leg(leg) {}
  int leg;  // 1..3
};

// The leg-I sign relation cannot be satisfied with a real slider value.
class InconsistentPose : public KinematicsError {
 public:
  InconsistentPose() : KinematicsError("pose inconsistent with the coupling constraint") {}
};

// A denominator of the forward-kinematics elimination chain vanished.
class DegenerateChain : public KinematicsError {
 public:
  enum class Step {
    y_elimination,  // R1 cos(alpha) - r1 = 0
    z_elimination,  // the slider-difference denominator vanished
    x_elimination,  // D1 - d1 = D2 - d2 (geometry-level)
  };
  explicit DegenerateChain(Step step)
      : KinematicsError(std::string("degenerate elimination chain: ") + name(step)),
        step(step) {}
  Step step;

 private:
  static const char* name(Step s) {
    switch (s) {
      case Step::y_elimination: return "y step (R1 cos(alpha) = r1)";
      case Step::z_elimination: return "z step (slider-difference denominator)";
      case Step::x_elimination: return "x step (equal leg x-offsets)";
    }
    return "?";
  }
};

// Newton step could not be computed (rank-deficient Jacobian).
class SingularJacobian : public KinematicsError {
 public:
  explicit SingularJacobian(int iteration)
      : KinematicsError("singular Jacobian at iteration " + std::to_string(iteration)),
        iteration(iteration) {}
  int iteration;
};

// Polynomial interpolation did not reproduce the cleared residual.
class ConditioningFailure : public KinematicsError {
 public:
  explicit ConditioningFailure(double leakage)
      : KinematicsError("polynomial interpolation conditioning failure"),
        leakage(leakage) {}
  double leakage;
};

// Zero polynomial handed to the root finder.
class DegenerateInput : public KinematicsError {
 public:
  DegenerateInput() : KinematicsError("zero polynomial has no defined roots") {}
};

// Malformed geometry configuration.
class ConfigError : public KinematicsError {
 public:
  explicit ConfigError(const std::string& msg) : KinematicsError("config: " + msg) {}
};

}  // namespace verne

#endif  // VERNE_ERRORS_HPP
