#ifndef FORWARD_COMMON_HPP
#define FORWARD_COMMON_HPP

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace forward {

/// Dense node index, 0..N-1 after load.
using NodeId = std::size_t;
/// Index into DistributionNetwork::edges().
using EdgeId = std::size_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Absolute tolerance on Kirchhoff residuals (unit-scaled flows).
inline constexpr double kFlowTolerance = 1e-8;
/// Guard on the sampler's weight denominator.
inline constexpr double kWeightDenominatorGuard = 1e-12;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed network or solution file.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A structural invariant of the network is violated. what() names it.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class CycleError : public Error {
  public:
    using Error::Error;
};

class ImbalanceError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class UnknownEdge : public Error {
  public:
    using Error::Error;
};

class InfeasibleSplit : public Error {
  public:
    using Error::Error;
};

class NoCandidate : public Error {
  public:
    using Error::Error;
};

/// Raised by the engine; carries the partition and iteration where the run stopped.
class Infeasible : public Error {
  public:
    Infeasible(const std::string &what, std::size_t partition, std::size_t iteration)
        : Error(what), partition_(partition), iteration_(iteration) {}

    std::size_t partition() const noexcept { return partition_; }
    std::size_t iteration() const noexcept { return iteration_; }

  private:
    std::size_t partition_;
    std::size_t iteration_;
};

class TooLarge : public Error {
  public:
    using Error::Error;
};

class InvalidSpec : public Error {
  public:
    using Error::Error;
};

} // namespace forward

#endif // FORWARD_COMMON_HPP
