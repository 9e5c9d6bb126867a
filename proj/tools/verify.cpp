#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>

#include "ccnet/lattice.hpp"
#include "ccnet/spectral.hpp"
#include "ccnet/transfer.hpp"

namespace ccnet::cli {

namespace {

struct Outcome {
    double measured;
    double tolerance;
};

struct Check {
    std::string name;
    std::function<Outcome()> run;
};

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CVector random_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    CVector v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
    return v;
}

cplx random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    return std::polar(1.0, u(rng));
}

std::vector<Check> build_checks(bool quick) {
    const int draws = quick ? 50 : 1000;
    const int L = quick ? 2 : 3;
    const int M = quick ? 2 : 3;
    const std::vector<double> rs = {0.3, 0.6, 0.7071067811865476, 0.9};
    std::vector<Check> checks;

    checks.push_back({"scattering matrix unitary", [=] {
                          std::mt19937_64 rng(1);
                          double worst = 0.0;
                          for (double r : rs)
                              for (int i = 0; i < draws; ++i) {
                                  const Eigen::Matrix2cd s = scattering_matrix(
                                      {random_unit(rng), random_unit(rng), random_unit(rng)}, ModelParams::from_r(r));
                                  worst = std::max(worst, (s.adjoint() * s - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff());
                              }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"finite operator unitary", [=] {
                          double worst = 0.0;
                          for (double r : {0.0, 0.6, 1.0})
                              for (std::uint64_t seed : {1, 2}) {
                                  const auto op = build_cylinder_operator(ModelParams::from_r(r),
                                                                          sample_phase_field(seed, L, M), L, M);
                                  worst = std::max(worst, op.unitarity_defect());
                              }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"extreme cases block invariant", [=] {
                          double worst = 0.0;
                          for (double r : {0.0, 1.0}) {
                              const auto op = build_cylinder_operator(ModelParams::from_r(r),
                                                                      sample_phase_field(3, L, M), L, M);
                              worst = std::max(worst, extreme_block_check(op));
                          }
                          return Outcome{worst, 0.0};
                      }});

    checks.push_back({"six-phase reduction equivalence", [=] {
                          const ModelParams p = ModelParams::from_r(0.6);
                          const Window w(L, M);
                          const NodePhaseField full = sample_node_phase_field(5, L, M);
                          const PhaseField reduced = reduce_phases(full);
                          const FullModelDiagonals dg = full_model_diagonals(full);
                          const CMatrix bare = build_cylinder_operator(p, PhaseField(w), L, M).dense();
                          CVector out(w.dim()), in(w.dim());
                          for (std::size_t i = 0; i < w.dim(); ++i) {
                              out(i) = dg.outgoing.at(w.site_at(i));
                              in(i) = dg.incoming.at(w.site_at(i));
                          }
                          const CMatrix six_phase = out.asDiagonal() * bare * in.asDiagonal();
                          const CMatrix conjugated = in.asDiagonal() * six_phase * in.conjugate().asDiagonal();
                          const auto op = build_cylinder_operator(p, reduced, L, M);
                          const CMatrix direct = op.dense();
                          double worst = 0.0;
                          for (std::size_t i = 0; i < w.dim(); ++i) {
                              if (op.structural_count(i) == 2)
                                  worst = std::max(worst, (conjugated.row(i) - direct.row(i)).cwiseAbs().maxCoeff());
                              worst = std::max(worst, std::abs(out(i) * in(i) - reduced.values()[i]));
                          }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"transfer blocks in U(1,1)", [=] {
                          std::mt19937_64 rng(7);
                          double worst = 0.0;
                          for (double r : rs)
                              for (int i = 0; i < draws; ++i) {
                                  const ModelParams p = ModelParams::from_r(r);
                                  const std::array<cplx, 3> q{random_unit(rng), random_unit(rng), random_unit(rng)};
                                  const cplx z = random_unit(rng);
                                  worst = std::max({worst, u11_defect(t_eo(z, q, p).matrix), u11_defect(t_oe(z, q, p).matrix)});
                              }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"cocycle step in U(1,1) within norm bound", [=] {
                          std::mt19937_64 rng(11);
                          double worst = 0.0;
                          for (double r : rs) {
                              const ModelParams p = ModelParams::from_r(r);
                              for (int i = 0; i < draws; ++i) {
                                  LayerPhases layer(M);
                                  for (int s = 0; s < 4 * M; ++s) layer.set_slot(s, random_unit(rng));
                                  const CMatrix a = cocycle_step(random_unit(rng), layer, p).matrix;
                                  const double norm = a.operatorNorm();
                                  worst = std::max(worst, u11_defect(a) / (norm * norm));
                                  if (norm > transfer_norm_bound(p) * (1.0 + 1e-12)) return Outcome{norm, transfer_norm_bound(p)};
                              }
                          }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"spectral parameter covariance", [=] {
                          std::mt19937_64 rng(13);
                          const ModelParams p = ModelParams::from_r(0.6);
                          double worst = 0.0;
                          for (int i = 0; i < draws; ++i) {
                              LayerPhases layer(M);
                              for (int s = 0; s < 4 * M; ++s) layer.set_slot(s, random_unit(rng));
                              const cplx w = random_unit(rng), z = random_unit(rng);
                              worst = std::max(worst, max_abs(cocycle_step(w * z, layer, p).matrix -
                                                              cocycle_step(z, rotate_phases(w, layer), p).matrix));
                          }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"fused step matches dense product", [=] {
                          std::mt19937_64 rng(17);
                          const ModelParams p = ModelParams::from_r(0.6);
                          double worst = 0.0;
                          for (int i = 0; i < 20; ++i) {
                              LayerPhases layer(M);
                              for (int s = 0; s < 4 * M; ++s) layer.set_slot(s, random_unit(rng));
                              const cplx z = random_unit(rng);
                              const FusedStep f = fused_step(z, layer, p);
                              kernels::SoaBlock block(2 * M, 2 * M);
                              block.set_identity();
                              kernels::scalar::mix_pairs(block, 0, f.first);
                              kernels::scalar::mix_pairs(block, 1, f.second);
                              const CMatrix dense = cocycle_step(z, layer, p).matrix;
                              for (int a = 0; a < 2 * M; ++a)
                                  for (int b = 0; b < 2 * M; ++b) worst = std::max(worst, std::abs(block.get(a, b) - dense(a, b)));
                          }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"propagator singular values pair", [=] {
                          std::mt19937_64 rng(19);
                          double worst = 0.0;
                          for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                              const Propagator pr = propagate(random_unit(rng), ModelParams::from_r(0.6),
                                                              sample_phase_field(seed, L, M), L);
                              const CMatrix& b = pr.transfer.matrix;
                              Eigen::JacobiSVD<CMatrix> svd(b);
                              const Eigen::VectorXd s = svd.singularValues();
                              for (int j = 0; j < 2 * M; ++j)
                                  worst = std::max(worst, std::abs(std::log(s(j)) + std::log(s(2 * M - 1 - j))));
                          }
                          return Outcome{worst, 1e-8};
                      }});

    checks.push_back({"propagator in U(1,1)", [=] {
                          std::mt19937_64 rng(19);
                          double worst = 0.0;
                          for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                              const CMatrix b = propagate(random_unit(rng), ModelParams::from_r(0.6),
                                                          sample_phase_field(seed, L, M), L).transfer.matrix;
                              const double norm = b.operatorNorm();
                              worst = std::max(worst, u11_defect(b) / (norm * norm));
                          }
                          return Outcome{worst, 1e-10};
                      }});

    checks.push_back({"eigenfunction reconstruction", [=] {
                          std::mt19937_64 rng(23);
                          double worst = 0.0;
                          const int trials = quick ? 5 : 100;
                          for (int i = 0; i < trials; ++i) {
                              const PhaseField f = sample_phase_field(100 + i, 5, 3);
                              const ReconstructionResidual res = reconstruct_and_verify(
                                  random_unit(rng), ModelParams::from_r(0.6), f, random_vector(rng, 6), 5);
                              worst = std::max({worst, res.eigen_residual, res.cocycle_residual});
                          }
                          return Outcome{worst, 1e-10};
                      }});

    checks.push_back({"parity operator algebra", [=] {
                          std::mt19937_64 rng(29);
                          std::uniform_real_distribution<double> u(0.0, 1.0);
                          double worst = 0.0;
                          for (int i = 0; i < (quick ? 20 : 100); ++i) {
                              const cplx z = std::polar(0.5 * std::pow(4.0, u(rng)), 2.0 * kPi * u(rng));
                              const ParityOperators po = build_parity_operators(z, M);
                              worst = std::max({worst, po.w_square_defect, po.v_inverse_defect, po.swap_square_defect});
                              const CMatrix image = po.w * po.even_projection;
                              for (int k = 0; k < M; ++k)
                                  for (int c = 0; c < 2 * M; ++c)
                                      worst = std::max(worst, std::abs(image(2 * k + 1, c) - z * image((2 * k + 2) % (2 * M), c)));
                          }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"determinant identity M=2 L=2", [=] {
                          std::mt19937_64 rng(31);
                          std::uniform_real_distribution<double> u(0.0, 1.0);
                          const ModelParams p = ModelParams::from_r(0.6);
                          double worst = 0.0;
                          for (std::uint64_t seed = 1; seed <= (quick ? 2u : 5u); ++seed) {
                              const PhaseField f = sample_phase_field(seed, 2, 2);
                              const SpectrumResult s = eigendecompose(build_cylinder_operator(p, f, 2, 2));
                              for (int i = 0; i < (quick ? 5 : 20); ++i) {
                                  double mod = 1.0;
                                  while (std::abs(mod - 1.0) < 1e-3) mod = 0.5 * std::pow(4.0, u(rng));
                                  const DeterminantCheck d =
                                      determinant_identity_residual(std::polar(mod, 2.0 * kPi * u(rng)), p, 2, 2, f, s);
                                  if (!d.degenerate) worst = std::max(worst, d.relative_error);
                              }
                          }
                          return Outcome{worst, 1e-8};
                      }});

    checks.push_back({"band symbol determinant", [=] {
                          double worst = 0.0;
                          for (double r : rs) {
                              const BandStructure bs = band_structure(ModelParams::from_r(r), 0, quick ? 32 : 64);
                              worst = std::max({worst, bs.max_det_defect, bs.max_modulus_defect});
                          }
                          return Outcome{worst, 1e-12};
                      }});

    checks.push_back({"band edge closed form", [=] {
                          double worst = 0.0;
                          for (double r : rs) {
                              const BandStructure bs = band_structure(ModelParams::from_r(r), 0, quick ? 32 : 64);
                              worst = std::max(worst, std::abs(bs.measured_edge - bs.predicted_edge));
                          }
                          return Outcome{worst, 1e-9};
                      }});

    checks.push_back({"cyclic subspace rank", [=] {
                          const ModelParams p = ModelParams::from_r(0.6);
                          double worst = 0.0;
                          for (int n = 0; n <= (quick ? 2 : 3); ++n) {
                              const int rank = krylov_rank(p, sample_phase_field(40 + n, n + 1, 2), n);
                              worst = std::max(worst, std::abs(double(rank - 4 * (2 * n + 1))));
                          }
                          return Outcome{worst, 0.0};
                      }});

    checks.push_back({"trace moments match power sums", [=] {
                          const auto op = build_cylinder_operator(ModelParams::from_r(0.7071067811865476),
                                                                  sample_phase_field(9, L + 2, M), L + 2, M);
                          const SpectrumResult s = eigendecompose(op);
                          const std::vector<cplx> m = trace_moments(op, 8);
                          double worst = std::abs(m[0] - 1.0);
                          for (int k = 1; k <= 8; ++k) {
                              cplx sum = 0.0;
                              for (cplx l : s.eigenvalues) sum += std::pow(l, k);
                              worst = std::max(worst, std::abs(sum / double(op.dim()) - m[k]));
                          }
                          return Outcome{std::max(worst, s.max_modulus_defect), 1e-10};
                      }});

    checks.push_back({"eigensolver routes agree", [=] {
                          const auto op = build_cylinder_operator(ModelParams::from_r(0.6), sample_phase_field(8, L, M), L, M);
                          SpectrumOptions general;
                          general.method = EigenMethod::General;
                          SpectrumOptions vectors;
                          vectors.vectors = true;
                          const SpectrumResult a = eigendecompose(op), b = eigendecompose(op, general),
                                               c = eigendecompose(op, vectors);
                          double worst = c.max_residual;
                          for (std::size_t i = 0; i < a.eigenphases.size(); ++i) {
                              const double d = std::abs(a.eigenphases[i] - b.eigenphases[i]);
                              worst = std::max(worst, std::min(d, 2.0 * kPi - d));
                          }
                          return Outcome{worst, 1e-8};
                      }});

    checks.push_back({"kernel backends agree", [=] {
                          if (!kernels::backend_available(kernels::Backend::Avx2)) return Outcome{0.0, 0.0};
                          const auto& s = kernels::table(kernels::Backend::Scalar);
                          const auto& v = kernels::table(kernels::Backend::Avx2);
                          std::mt19937_64 rng(37);
                          std::normal_distribution<double> g;
                          const int n = 2 * M + 2;
                          kernels::SoaBlock a(n, n), b(n, n);
                          for (int i = 0; i < n; ++i)
                              for (int j = 0; j < n; ++j) {
                                  const cplx x(g(rng), g(rng));
                                  a.set(i, j, x);
                                  b.set(i, j, x);
                              }
                          std::vector<kernels::PairCoeffs> coeffs(n / 2);
                          for (auto& c : coeffs) c = {cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
                          s.mix_pairs(a, 1, coeffs);
                          v.mix_pairs(b, 1, coeffs);
                          std::vector<double> la(n, 0.0), lb(n, 0.0);
                          s.gram_schmidt(a, la);
                          v.gram_schmidt(b, lb);
                          double worst = 0.0;
                          for (int i = 0; i < n; ++i) {
                              worst = std::max(worst, std::abs(la[i] - lb[i]));
                              for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(a.get(i, j) - b.get(i, j)));
                          }
                          const auto op = build_cylinder_operator(ModelParams::from_r(0.6), sample_phase_field(4, L, M), L, M);
                          const int dim = static_cast<int>(op.dim());
                          kernels::SoaBlock x(dim, 5), ya(dim, 5), yb(dim, 5);
                          for (int i = 0; i < dim; ++i)
                              for (int j = 0; j < 5; ++j) x.set(i, j, cplx(g(rng), g(rng)));
                          s.sparse_apply(op.band(), x, ya);
                          v.sparse_apply(op.band(), x, yb);
                          for (int i = 0; i < dim; ++i)
                              for (int j = 0; j < 5; ++j) worst = std::max(worst, std::abs(ya.get(i, j) - yb.get(i, j)));
                          return Outcome{worst, 1e-12};
                      }});

    return checks;
}

}  // namespace

bool run_verify_suite(bool quick, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const Check& check : build_checks(quick)) {
        Outcome o{};
        std::string error;
        try {
            o = check.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const bool pass = error.empty() && o.measured <= o.tolerance && std::isfinite(o.measured);
        out << (pass ? "PASS " : "FAIL ") << check.name;
        if (error.empty())
            out << "  measured=" << std::setprecision(3) << o.measured << " tolerance=" << o.tolerance;
        else
            out << "  error: " << error;
        out << '\n';
        if (!pass) return false;
    }
    out << "all checks passed in " << std::setprecision(3)
        << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return true;
}

}  // namespace ccnet::cli
