#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hqaco {

/// Full real-amplitude register state of a q-qubit system.
///
/// Basis convention: qubit 0 is the top circuit line and the most
/// significant bit of a basis index, so a measured bitstring read top
/// to bottom is the basis index in binary.
struct StateVector {
    int qubit_count = 0;
    std::vector<double> amplitudes;

    static constexpr double kNormTolerance = 1e-9;

    std::size_t dimension() const { return amplitudes.size(); }
    double norm_squared() const;
    double probability(std::size_t basis_index) const;
};

enum class GateKind { Ry, Cnot, CRy };

/// One gate of the restricted family {Ry, (multi-)controlled X, controlled Ry}.
/// Controls are empty for Ry and non-empty for Cnot/CRy; nested generator
/// circuits add controls to inner CNOTs, so Cnot accepts more than one.
struct GateOp {
    GateKind kind = GateKind::Ry;
    int target = 0;
    std::vector<int> controls;
    double theta = 0.0;

    static GateOp ry(int target, double theta);
    static GateOp cnot(int control, int target);
    static GateOp cnot(std::vector<int> controls, int target);
    static GateOp cry(std::vector<int> controls, int target, double theta);
};

struct Circuit {
    int qubit_count = 0;
    std::vector<GateOp> gates;
};

/// |0...0>: amplitude 1 at basis index 0. Throws std::invalid_argument for q < 1.
StateVector zero_state(int qubit_count);

/// Applies one gate in place via bit-indexed strides over the 2^q array.
/// Throws std::invalid_argument if the gate is malformed or out of range.
void apply_gate(StateVector& state, const GateOp& gate);

/// Folds apply_gate over the circuit starting from the zero state.
StateVector run_circuit(const Circuit& circuit);

/// Draws `shots` independent basis indices, each with probability equal to
/// the squared amplitude. Indices with zero amplitude are never returned.
std::vector<std::size_t> sample(const StateVector& state, int shots,
                                std::mt19937_64& rng);

/// Uniform double in [0, 1) built from the top 53 bits of the generator.
/// Pinned bit construction keeps seeded runs identical across standard
/// library implementations.
double uniform_unit(std::mt19937_64& rng);

/// Text gate list, one gate per line:
///   RY t=<i> theta=<f>
///   CNOT c=<i,...> t=<i>
///   CRY c=<i,...> t=<i> theta=<f>
std::string format_gate_list(const Circuit& circuit);

}  // namespace hqaco
