#pragma once

#include "hqaco/graph_io.hpp"

#include <vector>

namespace hqaco {

struct Hyperparameters {
    double alpha = 0.4;             // exponent on the inverse edge cost
    double beta = 0.6;              // exponent on the pheromone value
    double rho = 0.01;              // per-tour evaporation rate
    double initial_pheromone = 0.5;
    int ants = 1000;
    int shots = 10;                 // measurements per selection

    void validate() const;  // throws std::invalid_argument
};

/// Symmetric per-edge pheromone matrix. Mutation is confined to a single
/// owner; parallel readers get a copied snapshot.
class PheromoneState {
public:
    PheromoneState(int dimension, double initial);

    int dimension() const { return dimension_; }
    double at(int a, int b) const {
        return eta_[static_cast<std::size_t>(a) *
                        static_cast<std::size_t>(dimension_) +
                    static_cast<std::size_t>(b)];
    }

    /// Multiplies every edge by (1 - rho); runs after every tour,
    /// successful or not.
    void evaporate(double rho);

    /// Adds 1/total_cost to every edge of the cycle, closing edge included.
    /// Throws std::invalid_argument for total_cost <= 0.
    void deposit(const std::vector<int>& cycle, double total_cost);

private:
    void bump(int a, int b, double delta);

    int dimension_;
    std::vector<double> eta_;
};

enum class TourStatus { InProgress, Success, Stuck };

struct TourState {
    std::vector<int> path;
    std::vector<char> visited;
    double accumulated_cost = 0.0;
    TourStatus status = TourStatus::InProgress;
};

struct TransitionDistribution {
    std::vector<int> candidates;       // unvisited neighbors, ascending
    std::vector<double> probabilities; // matching, strictly positive, sum 1
    bool empty() const { return candidates.empty(); }
};

/// Probability of moving to each unvisited neighbor of `current`:
/// proportional to (1/cost)^alpha * eta^beta, normalized over the unvisited
/// neighbors. An empty result is the stuck signal.
/// Falls back to log-space evaluation when a factor leaves [1e-300, 1e300].
TransitionDistribution transition_distribution(const ProblemInstance& instance,
                                               const PheromoneState& pheromone,
                                               const Hyperparameters& params,
                                               int current,
                                               const std::vector<char>& visited);

/// Cost of a Hamiltonian cycle given either as an open node list (the
/// closing edge back to the first node is added) or as a closed list whose
/// last node repeats the first. Throws std::invalid_argument when a
/// consecutive pair (or the closing pair) is not an edge.
double tour_cost(const ProblemInstance& instance, const std::vector<int>& cycle);

}  // namespace hqaco
