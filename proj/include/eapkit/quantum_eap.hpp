#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "eapkit/constants.hpp"
#include "eapkit/errors.hpp"
#include "eapkit/experiment_design.hpp"
#include "eapkit/hermitian.hpp"

namespace eapkit {

/// Mass promoted to an operator on the internal space: M = m*I + E/c².
/// Separate instances describe the active and passive charges of one system;
/// the operator-level symmetry question is whether they coincide.
struct MassOperator {
    double rest_mass = 0.0;  // kg
    CMatrix internal_energy; // J, Hermitian

    MassOperator(double m, CMatrix energy) : rest_mass(m), internal_energy(std::move(energy)) {
        if (!(rest_mass > 0.0))
            throw DomainError("MassOperator rest_mass must be positive, got " +
                              std::to_string(m));
        if (internal_energy.n == 0) throw DomainError("MassOperator needs a nonempty matrix");
        if (!is_hermitian(internal_energy))
            throw DomainError("MassOperator internal_energy must be Hermitian");
    }
    /// Purely classical mass: 1x1 zero internal energy.
    static MassOperator classical(double m) { return MassOperator(m, CMatrix(1)); }

    std::size_t dim() const { return internal_energy.n; }

    /// Largest internal energy magnitude against the rest-mass energy. The
    /// 1/c² expansion is trusted only while this stays below 1e-6.
    double weak_field_ratio() const {
        const auto eig = eigh(internal_energy);
        const double emax =
            std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
        return emax / (rest_mass * constants::SPEED_OF_LIGHT * constants::SPEED_OF_LIGHT);
    }
    bool weak_field_ok() const { return weak_field_ratio() <= 1e-6; }

    /// m*I + E/c², in kg.
    CMatrix mass_matrix() const {
        const double c2 = constants::SPEED_OF_LIGHT * constants::SPEED_OF_LIGHT;
        return CMatrix::identity(dim()) * rest_mass + internal_energy * (1.0 / c2);
    }
};

/// Two systems at fixed separation, each carrying active and passive mass
/// operators on its own internal space. Joint-space operators below embed
/// system 1 as A⊗I and system 2 as I⊗B.
struct QuantumPair {
    MassOperator passive1;
    MassOperator active1;
    MassOperator passive2;
    MassOperator active2;
    double separation = 0.0; // m

    QuantumPair(MassOperator p1, MassOperator a1, MassOperator p2, MassOperator a2, double r)
        : passive1(std::move(p1)), active1(std::move(a1)), passive2(std::move(p2)),
          active2(std::move(a2)), separation(r) {
        if (!(separation > 0.0)) throw DomainError("QuantumPair separation must be positive");
        if (passive1.dim() != active1.dim() || passive2.dim() != active2.dim())
            throw DomainError("QuantumPair dimension mismatch between active and passive operators");
    }
    std::size_t dim1() const { return passive1.dim(); }
    std::size_t dim2() const { return passive2.dim(); }
};

enum class SourceTag {
    operator_identity,  // E_a = E_p
    operator_custom,    // explicit E_a
    expectation_value,  // E_a -> <E_p> * I in the prepared state
    null_superposition, // E_a = 0 on non-eigenstates, eigenvalue on eigenstates
    noncommuting        // explicit E_a with [E_p, E_a] != 0
};

struct SourceModel {
    SourceTag tag = SourceTag::operator_identity;
    CMatrix active_energy; // used by operator_custom and noncommuting

    static SourceModel identity() { return {SourceTag::operator_identity, {}}; }
    static SourceModel custom(CMatrix e) { return {SourceTag::operator_custom, std::move(e)}; }
    static SourceModel expectation() { return {SourceTag::expectation_value, {}}; }
    static SourceModel null_superposition() { return {SourceTag::null_superposition, {}}; }
    static SourceModel noncommuting(CMatrix e) { return {SourceTag::noncommuting, std::move(e)}; }
};

/// Internal superposition state, unit norm.
struct InternalState {
    std::vector<cdouble> amplitudes;

    explicit InternalState(std::vector<cdouble> amps) : amplitudes(std::move(amps)) {
        double n2 = 0.0;
        for (const auto& a : amplitudes) n2 += std::norm(a);
        if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
            throw DomainError("InternalState must have unit norm, got " +
                              std::to_string(std::sqrt(n2)));
    }
    static InternalState basis(std::size_t dim, std::size_t k) {
        std::vector<cdouble> a(dim, cdouble{});
        a.at(k) = 1.0;
        return InternalState(std::move(a));
    }
    static InternalState equal_superposition(std::size_t dim) {
        std::vector<cdouble> a(dim, cdouble{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
        return InternalState(std::move(a));
    }
    std::size_t dim() const { return amplitudes.size(); }
};

/// <psi|A|psi>, real part (exact for Hermitian A).
inline double expectation(const CMatrix& A, const InternalState& psi) {
    if (A.n != psi.dim()) throw DomainError("expectation: state/operator dimension mismatch");
    cdouble acc{};
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t j = 0; j < A.n; ++j)
            acc += std::conj(psi.amplitudes[i]) * A(i, j) * psi.amplitudes[j];
    return acc.real();
}

/// Net force operator on the joint internal space,
///   F = -(G/r²) * (M1a⊗M2p - M1p⊗M2a).
/// Sign convention: positive eigenvalues push the composite from system 1
/// toward system 2. In the 1x1 classical limit this is the net_force scalar
/// projected on that axis.
inline CMatrix net_force_operator(const QuantumPair& pair, double G = constants::G_NEWTON) {
    const double r2 = pair.separation * pair.separation;
    const CMatrix m1a = pair.active1.mass_matrix();
    const CMatrix m1p = pair.passive1.mass_matrix();
    const CMatrix m2a = pair.active2.mass_matrix();
    const CMatrix m2p = pair.passive2.mass_matrix();
    return (kron(m1a, m2p) - kron(m1p, m2a)) * (-G / r2);
}

/// The 1/c expansion of the composite self-acceleration, grouped by powers.
struct AccelExpansion {
    double order_c0 = 0.0; // m/s², the classical rest-mass term S*G*mu/r²
    CMatrix order_c2;      // m/s², operator-valued 1/c² term on the joint space
};

/// order_c0: the rest-mass (classical) self-acceleration, positive along the
/// system-2 -> system-1 axis. order_c2: the operator-valued 1/c² correction,
///   -(G/r²)*mu*[ (m1a+m2a)/(m1p+m2p)*(E2p/(m2p c²) - E1p/(m1p c²))
///                + E1a/(m1p c²) - E2a/(m2p c²) ],
/// positive along system-1 -> system-2 (it inherits the net-force-operator
/// axis; the two conventions are documented, not reconciled).
inline AccelExpansion accel_expansion(const QuantumPair& pair, double G = constants::G_NEWTON) {
    for (const MassOperator* op :
         {&pair.passive1, &pair.active1, &pair.passive2, &pair.active2}) {
        if (!op->weak_field_ok())
            throw WeakFieldViolation("internal energy / rest energy ratio " +
                                     std::to_string(op->weak_field_ratio()) +
                                     " exceeds 1e-6; 1/c^2 expansion invalid");
    }
    const double c2 = constants::SPEED_OF_LIGHT * constants::SPEED_OF_LIGHT;
    const double r2 = pair.separation * pair.separation;
    const double m1p = pair.passive1.rest_mass;
    const double m2p = pair.passive2.rest_mass;
    const double m1a = pair.active1.rest_mass;
    const double m2a = pair.active2.rest_mass;
    const double mu = m1p * m2p / (m1p + m2p);
    const double s = m1a / m1p - m2a / m2p;

    AccelExpansion out;
    out.order_c0 = s * G * mu / r2;

    const CMatrix i1 = CMatrix::identity(pair.dim1());
    const CMatrix i2 = CMatrix::identity(pair.dim2());
    const CMatrix e1p = kron(pair.passive1.internal_energy, i2) * (1.0 / (m1p * c2));
    const CMatrix e2p = kron(i1, pair.passive2.internal_energy) * (1.0 / (m2p * c2));
    const CMatrix e1a = kron(pair.active1.internal_energy, i2) * (1.0 / (m1p * c2));
    const CMatrix e2a = kron(i1, pair.active2.internal_energy) * (1.0 / (m2p * c2));
    const double mass_ratio = (m1a + m2a) / (m1p + m2p);
    out.order_c2 = ((e2p - e1p) * mass_ratio + e1a - e2a) * (-G * mu / r2);
    return out;
}

struct AccelerationBranch {
    double probability = 0.0;
    double acceleration = 0.0; // m/s², along system-1 -> system-2
};

struct OscillationReport {
    double amplitude = 0.0;         // m/s², dominant oscillating term of <Delta>(t)
    double angular_frequency = 0.0; // rad/s
};

struct ClockBranches {
    std::vector<AccelerationBranch> branches; // full spectrum, ascending acceleration
    std::optional<OscillationReport> oscillation; // noncommuting model only
};

/// Self-acceleration branches of a clock (system 1) next to an inert mass:
/// builds E1a from the chosen source model, diagonalizes
/// Delta = E1a - E1p, and scales each eigenvalue by the prefactor
///   -(G/(c²r²)) * m2p/(m1p+m2p).
/// Branch probabilities are the state's overlaps with the eigenspaces; zero
/// probability branches are kept so the output always lists the full
/// spectrum, and degenerate eigenvalues are merged (1e-12 relative).
inline ClockBranches clock_self_acceleration(const CMatrix& clock_Ep, const SourceModel& model,
                                             const InternalState& state, double m1p, double m2p,
                                             double r, double G = constants::G_NEWTON) {
    if (!(m1p > 0.0) || !(m2p > 0.0)) throw DomainError("clock masses must be positive");
    if (!(r > 0.0)) throw DomainError("clock separation must be positive");
    if (!is_hermitian(clock_Ep)) throw DomainError("clock_Ep must be Hermitian");
    if (clock_Ep.n != state.dim()) throw DomainError("clock state dimension mismatch");

    const std::size_t n = clock_Ep.n;
    CMatrix e1a(n);
    switch (model.tag) {
        case SourceTag::operator_identity:
            e1a = clock_Ep;
            break;
        case SourceTag::operator_custom:
        case SourceTag::noncommuting: {
            if (model.active_energy.n != n)
                throw DomainError("source model active_energy dimension mismatch");
            if (!is_hermitian(model.active_energy))
                throw DomainError("source model active_energy must be Hermitian");
            if (model.tag == SourceTag::noncommuting) {
                const CMatrix comm =
                    clock_Ep * model.active_energy - model.active_energy * clock_Ep;
                const double scale =
                    std::max(clock_Ep.max_abs() * model.active_energy.max_abs(), 1e-300);
                if (comm.max_abs() <= 1e-12 * scale)
                    throw DomainError("noncommuting model requires [E_p, E_a] != 0");
            }
            e1a = model.active_energy;
            break;
        }
        case SourceTag::expectation_value:
            e1a = CMatrix::identity(n) * expectation(clock_Ep, state);
            break;
        case SourceTag::null_superposition: {
            // Eigenstates keep their sourcing energy; genuine superpositions
            // source nothing. Eigenstate test: energy spread small against
            // the spectral range.
            const auto eig = eigh(clock_Ep);
            const double range = eig.eigenvalues.back() - eig.eigenvalues.front();
            const double mean = expectation(clock_Ep, state);
            const double second = expectation(clock_Ep * clock_Ep, state);
            const double sdev = std::sqrt(std::max(0.0, second - mean * mean));
            if (range == 0.0 || sdev <= 1e-9 * range)
                e1a = CMatrix::identity(n) * mean;
            // else E1a stays zero
            break;
        }
    }

    const CMatrix delta = e1a - clock_Ep;
    const auto eig = eigh(delta);

    // Overlap probabilities |<v_k|psi>|².
    std::vector<double> probs(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        cdouble amp{};
        for (std::size_t i = 0; i < n; ++i)
            amp += std::conj(eig.vectors(i, k)) * state.amplitudes[i];
        probs[k] = std::norm(amp);
    }

    const double c2 = constants::SPEED_OF_LIGHT * constants::SPEED_OF_LIGHT;
    const double prefactor = -(G / (c2 * r * r)) * (m2p / (m1p + m2p));

    double lam_scale = 0.0;
    for (double l : eig.eigenvalues) lam_scale = std::max(lam_scale, std::abs(l));

    ClockBranches out;
    for (std::size_t k = 0; k < n; ++k) {
        if (!out.branches.empty() &&
            std::abs(eig.eigenvalues[k] - eig.eigenvalues[k - 1]) <= 1e-12 * lam_scale) {
            out.branches.back().probability += probs[k]; // merge degenerate branch
            continue;
        }
        out.branches.push_back({probs[k], prefactor * eig.eigenvalues[k]});
    }
    std::sort(out.branches.begin(), out.branches.end(),
              [](const AccelerationBranch& a, const AccelerationBranch& b) {
                  return a.acceleration < b.acceleration;
              });

    if (model.tag == SourceTag::noncommuting) {
        // <Delta>(t) under evolution generated by E_p: in the E_p eigenbasis
        // the (j,k) matrix element beats at (eps_k - eps_j)/hbar. Report the
        // dominant oscillating term, scaled to acceleration units.
        const auto ep = eigh(clock_Ep);
        std::vector<cdouble> d(n, cdouble{});
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                d[j] += std::conj(ep.vectors(i, j)) * state.amplitudes[i];

        OscillationReport rep;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const double de = ep.eigenvalues[k] - ep.eigenvalues[j];
                if (de == 0.0) continue;
                cdouble djk{};
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t l = 0; l < n; ++l)
                        djk += std::conj(ep.vectors(i, j)) * delta(i, l) * ep.vectors(l, k);
                const double amp = 2.0 * std::abs(std::conj(d[j]) * d[k] * djk);
                if (amp > rep.amplitude) {
                    rep.amplitude = amp;
                    rep.angular_frequency = de / constants::HBAR;
                }
            }
        }
        rep.amplitude *= std::abs(prefactor);
        out.oscillation = rep;
    }
    return out;
}

struct SqScenario {
    double m1p = 0.0;                   // kg, clock system
    double m2p = 0.0;                   // kg, companion
    double r = 0.0;                     // m
    double mean_transition_energy = 0.0; // J, <E_p> of the prepared ensemble
    double n_systems = 1.0;             // count N, coherent enhancement
    double resolution = 0.0;            // m/s²
};

/// Threshold value of S_q detectable at the stated resolution:
///   S_q = resolution * c² * r² * (m1p+m2p) / (G * N * m2p * <E_p>).
/// Larger-than-threshold violations would have been seen; the result is a
/// bound with central 0. Linear in resolution and in 1/N.
inline BoundResult sq_bound(const SqScenario& sc, double G = constants::G_NEWTON) {
    if (!(sc.m1p > 0.0) || !(sc.m2p > 0.0)) throw DomainError("sq_bound masses must be positive");
    if (!(sc.r > 0.0)) throw DomainError("sq_bound separation must be positive");
    if (!(sc.mean_transition_energy > 0.0))
        throw DomainError("sq_bound mean_transition_energy must be positive");
    if (!(sc.n_systems >= 1.0)) throw DomainError("sq_bound n_systems must be >= 1");
    if (!(sc.resolution > 0.0)) throw DomainError("sq_bound resolution must be positive");

    const double c2 = constants::SPEED_OF_LIGHT * constants::SPEED_OF_LIGHT;
    const double bound = sc.resolution * c2 * sc.r * sc.r * (sc.m1p + sc.m2p) /
                         (G * sc.n_systems * sc.m2p * sc.mean_transition_energy);

    BoundResult out;
    out.parameter = BoundParameter::S_q;
    out.central = 0.0;
    out.uncertainty = bound;
    out.formula_id = "Sq-threshold/res*c^2*r^2*M/(G*N*m2p*E)";
    out.inputs.emplace_back("m1p", sc.m1p);
    out.inputs.emplace_back("m2p", sc.m2p);
    out.inputs.emplace_back("r", sc.r);
    out.inputs.emplace_back("mean_transition_energy", sc.mean_transition_energy);
    out.inputs.emplace_back("n_systems", sc.n_systems);
    out.inputs.emplace_back("resolution", sc.resolution);
    out.inputs.emplace_back("G", G);
    return out;
}

/// Harmonic mean range of two exponential charge clouds.
inline double effective_range(double alpha1, double alpha2) {
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw DomainError("overlap ranges must be positive");
    return alpha1 * alpha2 / (alpha1 + alpha2);
}

/// Wavefunction overlap of two hydrogen-like clouds at separation r,
/// exp(-r/alpha_eff).
inline double overlap(double r, double alpha1, double alpha2) {
    if (!(r >= 0.0)) throw DomainError("overlap separation must be >= 0");
    return std::exp(-r / effective_range(alpha1, alpha2));
}

/// Inverse of the binding-energy relation E_b = E_0 * exp(-r/alpha_eff).
inline double binding_distance(double e_b, double e_0, double alpha_eff) {
    if (!(alpha_eff > 0.0)) throw DomainError("binding alpha_eff must be positive");
    if (!(e_b > 0.0) || !(e_b < e_0))
        throw DomainError("binding energy must satisfy 0 < E_b < E_0 (bound regime)");
    return -std::log(e_b / e_0) * alpha_eff;
}

} // namespace eapkit
