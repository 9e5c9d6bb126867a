#pragma once

#include <array>
#include <vector>

#include "ccnet/kernels.hpp"
#include "ccnet/params.hpp"
#include "ccnet/phases.hpp"
#include "ccnet/types.hpp"

namespace ccnet {

enum class TransferRole { EvenToOdd, OddToEven };

struct TransferBlock {
    Eigen::Matrix2cd matrix;
    cplx z;
    TransferRole role;
};

// (psi_{2j+1,2k}, psi_{2j+1,2k+1}) = T_eo (psi_{2j,2k}, psi_{2j,2k+1}).
TransferBlock t_eo(cplx z, const std::array<cplx, 3>& q, const ModelParams& params);
// (psi_{2j+2,2k+1}, psi_{2j+2,2k+2}) = T_oe (psi_{2j+1,2k+1}, psi_{2j+1,2k+2}).
TransferBlock t_oe(cplx z, const std::array<cplx, 3>& q, const ModelParams& params);

// diag(1, -1, 1, -1, ...) of size n.
Eigen::VectorXd lorentz_signature(int n);
// max |B* J B - J| for the alternating signature J.
double u11_defect(const CMatrix& b);

struct LayerMatrices {
    CMatrix m1;
    CMatrix m2;
};
LayerMatrices layer_matrices(cplx z, int M, const ModelParams& params);

// 4M phases of one double layer. Slot layout:
//   p_r = (1, s[1], 1, s[3], ..., 1, s[2M-1])
//   p_l = (s[0], 1, s[2], 1, ..., s[2M-2], 1)
//   p_m = (s[2M], ..., s[4M-1])
class LayerPhases {
public:
    explicit LayerPhases(int M);
    LayerPhases(int M, std::vector<cplx> slots);

    int M() const { return M_; }
    const std::vector<cplx>& slots() const { return slots_; }
    cplx slot(int i) const { return slots_[i]; }
    void set_slot(int i, cplx v);

    CVector right() const;
    CVector left() const;
    CVector middle() const;

private:
    int M_;
    std::vector<cplx> slots_;
};

// Layer phases of the double column 2j -> 2j+2:
//   slot 2k         = q(2j+2, 2k)
//   slot 2k+1       = conj q(2j, 2k+1)
//   slot 2M + 2k    = q(2j+1, 2k)
//   slot 2M + 2k+1  = conj q(2j+1, 2k+1)
LayerPhases phase_slotting(const PhaseField& phases, int j);
LayerPhases phase_slotting(const PhaseSource& source, int M, int j);

// w (.) p: even slots multiplied by conj w, odd slots by w.
LayerPhases rotate_phases(cplx w, const LayerPhases& layer);

struct TransferMatrix {
    CMatrix matrix;
    cplx z;
};

// D(p_l) M2 D(p_m) M1 D(p_r), formed densely.
TransferMatrix cocycle_step(cplx z, const LayerPhases& layer, const ModelParams& params);

// (1/rt)(1+r)(1+t).
double transfer_norm_bound(const ModelParams& params);

// The same step as two pair-mixing stages (pairs (2k,2k+1), then (2k+1,2k+2)).
struct FusedStep {
    std::vector<kernels::PairCoeffs> first;
    std::vector<kernels::PairCoeffs> second;
};
FusedStep fused_step(cplx z, const LayerPhases& layer, const ModelParams& params);

struct Propagator {
    TransferMatrix transfer;
    Window window;
};
// Ordered product of the 2L steps across columns -2L..2L.
Propagator propagate(cplx z, const ModelParams& params, const PhaseField& phases, int L);

struct ReconstructionResidual {
    double eigen_residual = 0.0;
    double cocycle_residual = 0.0;
    std::vector<double> column_norms;
};

// Builds psi column by column from psi_0 at column -2L through 2N columns with
// the two-site recursions, then measures |(U psi - z psi)_mu| / |psi| over the
// rows fed entirely from the built columns, and the mismatch with the cocycle.
ReconstructionResidual reconstruct_and_verify(cplx z, const ModelParams& params, const PhaseField& phases,
                                              const CVector& psi0, int N);

}  // namespace ccnet
