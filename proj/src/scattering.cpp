#include "graphene_ndr/scattering.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "graphene_ndr/error.hpp"

namespace graphene_ndr {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Mat2 {
    Complex m00, m01, m10, m11;

    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }

    Mat2 inverse() const {
        const Complex det = m00 * m11 - m01 * m10;
        return {m11 / det, -m01 / det, -m10 / det, m00 / det};
    }
};

// Columns are the forward and backward spinors of a region evaluated at x.
Mat2 spinor_columns(const RegionState& region, double x) {
    const Complex fwd = std::exp(kI * (region.k_x * x));
    const Complex bwd = std::exp(-kI * (region.k_x * x));
    const double s = region.band_sign;
    return {fwd, bwd, s * std::exp(kI * region.angle) * fwd, -s * std::exp(-kI * region.angle) * bwd};
}

std::string describe(double energy_meV, double k_y, double bias_mV, const Barrier& barrier) {
    std::ostringstream os;
    os.precision(17);
    os << "(E=" << energy_meV << " meV, k_y=" << k_y << " 1/nm, V=" << bias_mV
       << " mV, V0=" << barrier.height_meV << " meV, D=" << barrier.width_nm << " nm)";
    return os.str();
}

// Kinematics and regime classification shared by both solvers. Fills the
// solution's regions; returns true when all three regions propagate and the
// amplitudes still have to be solved for.
bool classify(double energy_meV, double k_y, double bias_mV, const Barrier& barrier,
              ScatteringSolution& sol) {
    const auto u = region_potentials(barrier.height_meV, bias_mV);
    sol.regions[0] = region_kinematics(energy_meV, k_y, u.source, barrier.hbar_vF, 1);
    sol.regions[1] = region_kinematics(energy_meV, k_y, u.barrier, barrier.hbar_vF, 2);
    sol.regions[2] = region_kinematics(energy_meV, k_y, u.drain, barrier.hbar_vF, 3);
    sol.mixed_band_signs = sol.regions[0].band_sign != sol.regions[2].band_sign;

    if (!sol.regions[0].propagating) {
        throw Error(Errc::NoInputMode,
                    "incident region has no propagating mode " + describe(energy_meV, k_y, bias_mV, barrier));
    }
    if (!sol.regions[1].propagating) {
        sol.regime = Regime::BarrierGap;
        sol.transmission = 0.0;
        sol.reflection = 1.0;
        return false;
    }
    if (!sol.regions[2].propagating) {
        sol.regime = Regime::NoOutputMode;
        sol.transmission = 0.0;
        sol.reflection = 1.0;
        return false;
    }
    if (std::abs(std::cos(sol.regions[2].angle)) < kGrazingGuard) {
        throw Error(Errc::GrazingOutput,
                    "grazing outgoing wave, cos(phi3) ~ 0 " + describe(energy_meV, k_y, bias_mV, barrier));
    }
    sol.regime = Regime::Propagating;
    return true;
}

void finish(ScatteringSolution& sol, const Amplitudes& amp) {
    const auto& in = sol.regions[0];
    const auto& out = sol.regions[2];
    sol.amplitudes = amp;
    sol.transmission = out.band_sign * std::cos(out.angle) * std::norm(amp.t) /
                       (in.band_sign * std::cos(in.angle));
    sol.reflection = std::norm(amp.r);
}

// Gaussian elimination with partial pivoting on an augmented n x (n+1) system.
template <std::size_t N>
std::array<Complex, N> gauss_solve(std::array<std::array<Complex, N + 1>, N> m) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < N; ++row) {
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        }
        if (std::abs(m[pivot][col]) < kPivotGuard) {
            throw Error(Errc::SingularSystem, "singular continuity system at column " + std::to_string(col));
        }
        std::swap(m[col], m[pivot]);
        for (std::size_t row = col + 1; row < N; ++row) {
            const Complex factor = m[row][col] / m[col][col];
            for (std::size_t k = col; k <= N; ++k) m[row][k] -= factor * m[col][k];
        }
    }
    std::array<Complex, N> x{};
    for (std::size_t i = N; i-- > 0;) {
        Complex acc = m[i][N];
        for (std::size_t k = i + 1; k < N; ++k) acc -= m[i][k] * x[k];
        x[i] = acc / m[i][i];
    }
    return x;
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Propagating: return "Propagating";
        case Regime::BarrierGap: return "BarrierGap";
        case Regime::NoOutputMode: return "NoOutputMode";
        case Regime::NoInputMode: return "NoInputMode";
    }
    return "Unknown";
}

Barrier Barrier::from(const DeviceConfig& cfg) {
    return {cfg.barrier_meV, cfg.width_nm, hbar_v_meV_nm(cfg.fermi_velocity_m_s)};
}

RegionState region_kinematics(double energy_meV, double k_y, double potential_meV, double hbar_vF,
                              int index) {
    const double kinetic = energy_meV - potential_meV;
    if (std::abs(kinetic) <= kDegeneracyGuard_meV) {
        std::ostringstream os;
        os.precision(17);
        os << "energy " << energy_meV << " meV at the Dirac point of region " << index
           << " (U=" << potential_meV << " meV)";
        throw Error(Errc::DegenerateEnergy, os.str());
    }
    RegionState state;
    state.index = index;
    state.potential_meV = potential_meV;
    state.band_sign = kinetic > 0 ? 1 : -1;

    const double k_total = std::abs(kinetic) / hbar_vF;
    const double k_t = std::abs(k_y);
    const double discriminant = (k_total - k_t) * (k_total + k_t);
    state.propagating = discriminant > 0;
    if (state.propagating) {
        state.k_x = std::sqrt(discriminant);
        state.angle = std::atan(k_y / state.k_x);
    } else {
        state.k_x = 0.0;
        state.angle = std::copysign(0.5 * kPi, k_y);
    }
    return state;
}

RegionState region_kinematics(double energy_meV, double k_y, double potential_meV,
                              const DerivedQuantities& dq, int index) {
    return region_kinematics(energy_meV, k_y, potential_meV, dq.hbar_vF, index);
}

ScatteringSolution solve_barrier(double energy_meV, double k_y, double bias_mV, const Barrier& barrier) {
    ScatteringSolution sol;
    if (!classify(energy_meV, k_y, bias_mV, barrier, sol)) return sol;

    const auto& [source, inside, drain] = sol.regions;
    const double d = barrier.width_nm;

    // (1, r) = P0 (a, b),  (a, b) = PD (t, 0)
    const Mat2 p0 = spinor_columns(source, 0.0).inverse() * spinor_columns(inside, 0.0);
    const Mat2 pd = spinor_columns(inside, d).inverse() * spinor_columns(drain, d);
    const Mat2 q = p0 * pd;

    Amplitudes amp;
    amp.t = 1.0 / q.m00;
    amp.r = q.m10 * amp.t;
    amp.a = pd.m00 * amp.t;
    amp.b = pd.m10 * amp.t;
    finish(sol, amp);
    return sol;
}

ScatteringSolution solve_barrier(double energy_meV, double k_y, double bias_mV, const DeviceConfig& cfg) {
    return solve_barrier(energy_meV, k_y, bias_mV, Barrier::from(cfg));
}

ScatteringSolution solve_barrier_oracle(double energy_meV, double k_y, double bias_mV,
                                        const Barrier& barrier) {
    ScatteringSolution sol;
    if (!classify(energy_meV, k_y, bias_mV, barrier, sol)) return sol;

    const auto& [source, inside, drain] = sol.regions;
    const double s1 = source.band_sign, s2 = inside.band_sign, s3 = drain.band_sign;
    const Complex e1p = std::exp(kI * source.angle), e1m = std::exp(-kI * source.angle);
    const Complex e2p = std::exp(kI * inside.angle), e2m = std::exp(-kI * inside.angle);
    const Complex e3p = std::exp(kI * drain.angle);
    const double d = barrier.width_nm;
    const Complex w2p = std::exp(kI * (inside.k_x * d)), w2m = std::exp(-kI * (inside.k_x * d));
    const Complex w3p = std::exp(kI * (drain.k_x * d));

    // Unknowns (r, a, b, t); both spinor components continuous at x = 0 and x = D.
    std::array<std::array<Complex, 5>, 4> system{{
        {1.0, -1.0, -1.0, 0.0, -1.0},
        {-s1 * e1m, -s2 * e2p, s2 * e2m, 0.0, -s1 * e1p},
        {0.0, w2p, w2m, -w3p, 0.0},
        {0.0, s2 * e2p * w2p, -s2 * e2m * w2m, -s3 * e3p * w3p, 0.0},
    }};
    const auto x = gauss_solve<4>(system);
    finish(sol, {x[0], x[1], x[2], x[3]});
    return sol;
}

ScatteringSolution solve_barrier_oracle(double energy_meV, double k_y, double bias_mV,
                                        const DeviceConfig& cfg) {
    return solve_barrier_oracle(energy_meV, k_y, bias_mV, Barrier::from(cfg));
}

double closed_form_unbiased(double energy_meV, double k_y, double barrier_meV, double width_nm,
                            double hbar_vF) {
    const auto outer = region_kinematics(energy_meV, k_y, 0.0, hbar_vF, 1);
    if (!outer.propagating) {
        throw Error(Errc::NoInputMode, "closed form needs propagating outer regions");
    }
    const auto inner = region_kinematics(energy_meV, k_y, barrier_meV, hbar_vF, 2);
    if (!inner.propagating) return 0.0;

    const double c1 = std::cos(outer.angle), c2 = std::cos(inner.angle);
    const double sign = outer.band_sign * inner.band_sign;
    const double phase = inner.k_x * width_nm;
    const double cos_term = std::cos(phase) * c1 * c2;
    const double sin_term = std::sin(phase) * (1.0 - sign * std::sin(outer.angle) * std::sin(inner.angle));
    return (c1 * c1 * c2 * c2) / (cos_term * cos_term + sin_term * sin_term);
}

}  // namespace graphene_ndr
