#pragma once

#include "hqaco/statevec.hpp"

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace hqaco {

/// Spherical rotation angles in [0, pi] driving a generator circuit;
/// a q-qubit circuit takes exactly 2^q - 1 of them.
using AngleVector = std::vector<double>;

/// Converts a non-negative amplitude vector (unit norm, zero-padded to its
/// full length) into the rotation angles of the generator circuit:
/// r_i = 2*arccos(a_i) with the remaining entries rescaled by 1/sin(r_i/2).
/// Once the residual norm of the unprocessed tail drops below 1e-12 the
/// remaining angles are don't-cares and are filled with 0.
/// Throws std::invalid_argument for negative entries or a squared norm
/// farther than 1e-4 from 1 (the input is renormalized internally).
AngleVector get_parameters(std::span<const double> amplitudes);

/// Inverse of get_parameters: entry i is the product of the first i
/// half-angle sines times the i-th half-angle cosine; the last entry is the
/// full sine product. Output has unit norm by construction.
std::vector<double> reconstruct_amplitudes(std::span<const double> angles);

/// A gate slot of the parameterized generator template. Rotation slots bind
/// theta = sign * angle[angle_index] + offset; fan gates have no parameter.
struct ParamGate {
    GateKind kind = GateKind::Ry;
    int target = 0;
    std::vector<int> controls;
    int angle_index = -1;
    double sign = 1.0;
    double offset = 0.0;
};

/// Parameterized arbitrary-state generator for one register size.
///
/// Construction is recursive: the single-qubit circuit is one Ry; the
/// two-qubit circuit is Ry(r1), CRy(-r2) and CRy(pi+r3); larger circuits
/// nest two copies of the next-smaller generator around a fully controlled
/// Ry and a CNOT fan, with the second copy gaining a control from the new
/// line. Bound with the angles of a probability vector p it prepares a
/// state whose squared amplitude at candidate_to_basis(i) equals p_i.
///
/// The candidate-to-basis bijection is discovered once at build time by
/// binding a strictly decreasing probe vector and ranking the simulated
/// probabilities, so no bit-order convention is assumed.
///
/// Immutable after construction and safe to share across threads; select()
/// is reentrant given distinct random streams.
class SelectorCircuit {
public:
    explicit SelectorCircuit(int qubit_count);

    int qubit_count() const { return qubit_count_; }
    std::size_t capacity() const { return std::size_t{1} << qubit_count_; }
    std::size_t parameter_count() const { return capacity() - 1; }
    const std::vector<ParamGate>& template_gates() const { return template_gates_; }

    /// Concrete circuit with all parameter slots bound.
    Circuit bind(std::span<const double> angles) const;

    std::size_t candidate_to_basis(std::size_t candidate) const;
    std::size_t basis_to_candidate(std::size_t basis) const;

    /// Encodes sqrt(p) zero-padded to 2^q and runs the bound circuit.
    StateVector prepare(std::span<const double> probabilities) const;

    /// One selection: prepare, measure `shots` times, return the candidate
    /// with the highest appearance count (ties broken uniformly at random
    /// from the caller's stream). Never returns a zero-probability
    /// candidate. Throws std::invalid_argument for an all-zero vector, a
    /// sum farther than 1e-6 from 1, or more candidates than 2^q.
    std::size_t select(std::span<const double> probabilities, int shots,
                       std::mt19937_64& rng) const;

private:
    int qubit_count_;
    std::vector<ParamGate> template_gates_;
    std::vector<std::size_t> candidate_to_basis_;
    std::vector<std::size_t> basis_to_candidate_;
};

/// Process-wide cache of generator templates, one per register size.
const SelectorCircuit& selector_for(int qubit_count);

}  // namespace hqaco
