#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "gramq/ensemble.hpp"
#include "gramq/ensemble_io.hpp"
#include "gramq/error.hpp"
#include "gramq/random.hpp"

using namespace gramq;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;
const Complex I(0, 1);

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no gramq::Error thrown";
  return ErrorKind::InvalidParameter;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

PureState ket(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Index>(amps.size()));
  Index i = 0;
  for (Complex a : amps) v[i++] = a;
  return PureState(v);
}

void expect_matrix_near(const ComplexMatrix& got, const ComplexMatrix& want, double tol) {
  ASSERT_EQ(got.rows(), want.rows());
  ASSERT_EQ(got.cols(), want.cols());
  EXPECT_LT(max_abs(got - want), tol) << "got\n" << got << "\nwant\n" << want;
}

}  // namespace

TEST(Gram, OrthogonalPairIsDiagonal) {
  const Ensemble e({{0.5, PureState::basis(2, 0)}, {0.5, PureState::basis(2, 1)}});
  expect_matrix_near(gram_matrix(e), 0.5 * ComplexMatrix::Identity(2, 2), 1e-15);
  EXPECT_TRUE(gram(e).is_diagonal());
}

TEST(Gram, B92AtDefaultOverlap) {
  ComplexMatrix want(2, 2);
  want << 1, 1 / kSqrt2, 1 / kSqrt2, 1;
  expect_matrix_near(gram_matrix(canonical(CanonicalName::b92)), 0.5 * want, 1e-15);
}

TEST(Gram, DiagEnsembleDisplayedMatrix) {
  ComplexMatrix want(3, 3);
  want << 1, 0, 1 / kSqrt2, 0, 1, 1 / kSqrt2, 1 / kSqrt2, 1 / kSqrt2, 1;
  expect_matrix_near(gram_matrix(canonical(CanonicalName::diag)), want / 3.0, 1e-15);
}

TEST(Gram, TrineDisplayedMatrix) {
  ComplexMatrix want(3, 3);
  want << 2, 1, 1, 1, 2, -1, 1, -1, 2;
  expect_matrix_near(gram_matrix(canonical(CanonicalName::trine)), want / 6.0, 1e-15);
}

TEST(Gram, Bb84DisplayedMatrix) {
  ComplexMatrix want(4, 4);
  want << kSqrt2, 0, 1, 1, 0, kSqrt2, 1, -1, 1, 1, kSqrt2, 0, 1, -1, 0, kSqrt2;
  expect_matrix_near(gram_matrix(canonical(CanonicalName::bb84)), want / (4 * kSqrt2), 1e-15);
}

TEST(Gram, TetradDisplayedMatrixSpectrumAndOverlaps) {
  ComplexMatrix want(4, 4);
  want << kSqrt3, 1, 1, 1, 1, kSqrt3, I, -I, 1, -I, kSqrt3, I, 1, I, -I, kSqrt3;
  const Ensemble e = canonical(CanonicalName::tetrad);
  expect_matrix_near(gram_matrix(e), want / (4 * kSqrt3), 1e-15);
  const RealVector ev = gram(e).spectrum().eigenvalues;
  EXPECT_NEAR(ev[0], 0.5, 1e-14);
  EXPECT_NEAR(ev[1], 0.5, 1e-14);
  EXPECT_EQ(ev[2], 0.0);
  EXPECT_EQ(ev[3], 0.0);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k)
      if (j != k) EXPECT_NEAR(std::norm(e[j].state.inner(e[k].state)), 1.0 / 3.0, 1e-15);
}

TEST(Gram, SixStateDisplayedMatrix) {
  const double r = kSqrt2;
  ComplexMatrix want(6, 6);
  want << 2, 0, 1. + I, 1. - I, r, r,
          0, 2, 1. - I, 1. + I, r, -r,
          1. - I, 1. + I, 2, 0, r, -r * I,
          1. + I, 1. - I, 0, 2, r, r * I,
          r, r, r, r, 2, 0,
          r, -r, r * I, -r * I, 0, 2;
  expect_matrix_near(gram_matrix(canonical(CanonicalName::six)), want / 12.0, 1e-15);
}

TEST(Gram, CanonicalSpectraFromDisplayedEigenvalues) {
  const double x = 1 / kSqrt2;
  auto ev = [](CanonicalName n) { return gram(canonical(n)).spectrum().eigenvalues; };
  EXPECT_NEAR(ev(CanonicalName::b92)[0], (1 + x) / 2, 1e-14);
  EXPECT_NEAR(ev(CanonicalName::b92)[1], (1 - x) / 2, 1e-14);
  EXPECT_NEAR(ev(CanonicalName::diag)[0], 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(ev(CanonicalName::diag)[1], 1.0 / 3.0, 1e-14);
  EXPECT_EQ(ev(CanonicalName::diag)[2], 0.0);
  const RealVector six = ev(CanonicalName::six);
  EXPECT_NEAR(six[0], 0.5, 1e-14);
  EXPECT_NEAR(six[1], 0.5, 1e-14);
  for (Index i = 2; i < 6; ++i) EXPECT_EQ(six[i], 0.0);
}

TEST(Gram, RandomEnsembleInvariants) {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const Index d = 1 + trial % 6;
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const Ensemble e = random_ensemble(n, d, rng);
    const GramMatrix g = gram(e);
    EXPECT_NEAR(g.matrix().trace().real(), 1.0, 1e-10);
    EXPECT_GE(g.spectrum().eigenvalues.minCoeff(), 0.0);
    EXPECT_LT(hermiticity_defect(gram_matrix(e)), 1e-14);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(g.matrix()(Index(i), Index(i)).real(), e[i].p, 1e-12);
  }
}

TEST(Gram, NonzeroSpectrumMatchesAverageState) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + trial % 5;
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    const Ensemble e = random_ensemble(n, d, rng);
    const RealVector a = gram(e).spectrum().eigenvalues;
    const RealVector b = DensityMatrix(e.average_state()).spectrum().eigenvalues;
    const Index k = std::min(a.size(), b.size());
    for (Index i = 0; i < k; ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
    for (Index i = k; i < a.size(); ++i) EXPECT_NEAR(a[i], 0.0, 1e-9);
    for (Index i = k; i < b.size(); ++i) EXPECT_NEAR(b[i], 0.0, 1e-9);
  }
}

TEST(CrossGram, SelfEqualsGram) {
  for (CanonicalName n : kCanonicalNames) {
    const Ensemble e = canonical(n);
    expect_matrix_near(cross_gram(e, e), gram_matrix(e), 1e-15);
  }
}

TEST(CrossGram, OrthogonalSingletons) {
  const Ensemble e({{1.0, PureState::basis(2, 0)}});
  const Ensemble f({{1.0, PureState::basis(2, 1)}});
  const ComplexMatrix c = cross_gram(e, f);
  ASSERT_EQ(c.rows(), 1);
  EXPECT_EQ(c(0, 0), Complex(0, 0));
}

TEST(CrossGram, UnitaryInvariantAndDimensionChecked) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 3;
    const Ensemble e = random_ensemble(3, d, rng), f = random_ensemble(2, d, rng);
    const ComplexMatrix u = random_unitary(d, rng);
    expect_matrix_near(cross_gram(apply_unitary(e, u), apply_unitary(f, u)), cross_gram(e, f), 1e-10);
  }
  EXPECT_EQ(kind_of([] {
              cross_gram(canonical(CanonicalName::trine),
                         Ensemble({{0.5, PureState::basis(3, 0)}, {0.5, PureState::basis(3, 2)}}));
            }),
            ErrorKind::DimensionMismatch);
}

TEST(ApplyUnitary, IdentityAndHadamardGate) {
  const Ensemble b92 = canonical(CanonicalName::b92);
  EXPECT_EQ(apply_unitary(b92, ComplexMatrix::Identity(2, 2)), b92);
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= kSqrt2;
  expect_matrix_near(gram_matrix(apply_unitary(b92, h)), gram_matrix(b92), 1e-10);
  Rng rng(24);
  const Ensemble trine = canonical(CanonicalName::trine);
  expect_matrix_near(gram_matrix(apply_unitary(trine, random_unitary(2, rng))), gram_matrix(trine), 1e-10);
}

TEST(ApplyUnitary, Errors) {
  ComplexMatrix m(2, 2);
  m << 1, 1, 0, 1;
  EXPECT_EQ(kind_of([&] { apply_unitary(canonical(CanonicalName::bb84), m); }), ErrorKind::NotUnitary);
  EXPECT_EQ(kind_of([] { apply_unitary(canonical(CanonicalName::bb84), ComplexMatrix::Identity(3, 3)); }),
            ErrorKind::DimensionMismatch);
}

TEST(Tensor, SingletonIsNeutral) {
  const Ensemble e = canonical(CanonicalName::trine);
  const Ensemble s({{1.0, PureState::basis(2, 0)}});
  expect_matrix_near(gram_matrix(tensor(e, s)), gram_matrix(e), 1e-15);
}

TEST(Tensor, GramIsKroneckerProduct) {
  const Ensemble b = canonical(CanonicalName::b92);
  expect_matrix_near(gram_matrix(tensor(b, b)), kron(gram_matrix(b), gram_matrix(b)), 1e-15);
  const Ensemble td = tensor(canonical(CanonicalName::trine), canonical(CanonicalName::diag));
  EXPECT_EQ(td.size(), 9u);
  EXPECT_EQ(td.dim(), 4);
  const GramMatrix g = gram(td);
  EXPECT_NEAR(g.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_GE(g.spectrum().eigenvalues.minCoeff(), 0.0);
  Rng rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const Ensemble e = random_ensemble(1 + trial % 3, 1 + trial % 3, rng);
    const Ensemble f = random_ensemble(1 + trial % 4, 2, rng);
    expect_matrix_near(gram_matrix(tensor(e, f)), kron(gram_matrix(e), gram_matrix(f)), 1e-12);
  }
}

TEST(Tensor, RowMajorMemberOrder) {
  const Ensemble e = canonical(CanonicalName::b92), f = canonical(CanonicalName::trine);
  const Ensemble t = tensor(e, f);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t k = 0; k < f.size(); ++k) {
      const Member& m = t[i * f.size() + k];
      EXPECT_NEAR(m.p, e[i].p * f[k].p, 1e-16);
      EXPECT_LT((m.state.amplitudes() - kron(e[i].state.amplitudes(), f[k].state.amplitudes())).norm(), 1e-15);
    }
}

TEST(Hadamard, RenormalizedEntrywiseProduct) {
  Rng rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    const Ensemble e = random_ensemble(n, 2, rng), f = random_ensemble(n, 3, rng);
    const HadamardProduct h = hadamard_product(e, f);
    double c = 0;
    for (std::size_t i = 0; i < n; ++i) c += e[i].p * f[i].p;
    EXPECT_NEAR(h.normalization, c, 1e-15);
    const ComplexMatrix want = gram_matrix(e).cwiseProduct(gram_matrix(f));
    expect_matrix_near(h.normalization * gram_matrix(h.ensemble), want, 1e-12);
  }
}

TEST(Hadamard, UniformSquareScalesByMemberCount) {
  const Ensemble t = canonical(CanonicalName::trine);
  const HadamardProduct h = hadamard_product(t, t);
  EXPECT_NEAR(h.normalization, 1.0 / 3.0, 1e-15);
  expect_matrix_near(gram_matrix(h.ensemble), 3.0 * gram_matrix(t).cwiseProduct(gram_matrix(t)), 1e-14);
}

TEST(Hadamard, SingletonsAndLengthMismatch) {
  const Ensemble s({{1.0, PureState::basis(2, 1)}});
  const HadamardProduct h = hadamard_product(s, s);
  EXPECT_NEAR(gram_matrix(h.ensemble)(0, 0).real(), 1.0, 1e-15);
  EXPECT_EQ(kind_of([] { hadamard_product(canonical(CanonicalName::trine), canonical(CanonicalName::bb84)); }),
            ErrorKind::LengthMismatch);
}

TEST(Canonical, NamesAndErrors) {
  for (CanonicalName n : kCanonicalNames) {
    EXPECT_EQ(parse_canonical_name(to_string(n)), n);
    EXPECT_EQ(canonical(to_string(n)).label(), to_string(n));
  }
  EXPECT_EQ(kind_of([] { canonical("seven"); }), ErrorKind::UnknownName);
  EXPECT_EQ(kind_of([] { canonical(CanonicalName::b92, 1.5); }), ErrorKind::ParameterOutOfRange);
  EXPECT_EQ(kind_of([] { canonical(CanonicalName::b92, -0.1); }), ErrorKind::ParameterOutOfRange);
}

TEST(Canonical, B92OverlapParameter) {
  for (double x : {0.0, 0.3, 0.9, 1.0}) {
    const Ensemble e = canonical(CanonicalName::b92, x);
    EXPECT_NEAR(std::abs(e[0].state.inner(e[1].state)), x, 1e-15);
  }
}

TEST(EnsembleInvariants, RejectsBadMembers) {
  EXPECT_EQ(kind_of([] { Ensemble({{0.5, PureState::basis(2, 0)}, {0.4, PureState::basis(2, 1)}}); }),
            ErrorKind::InvariantViolation);
  EXPECT_EQ(kind_of([] { Ensemble({{1.0, PureState::basis(2, 0)}, {0.0, PureState::basis(2, 1)}}); }),
            ErrorKind::InvariantViolation);
  EXPECT_EQ(kind_of([] { Ensemble({{0.5, PureState::basis(2, 0)}, {0.5, PureState::basis(3, 1)}}); }),
            ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { ket({1.0, 1.0}); }), ErrorKind::InvariantViolation);
  EXPECT_EQ(kind_of([] { Ensemble(std::vector<Member>{}); }), ErrorKind::InvariantViolation);
}

TEST(EnsembleIo, RoundTripIsExact) {
  Rng rng(27);
  std::vector<Ensemble> cases;
  for (CanonicalName n : kCanonicalNames) cases.push_back(canonical(n));
  for (int i = 0; i < 20; ++i) cases.push_back(random_ensemble(1 + i % 5, 1 + i % 4, rng));
  for (const Ensemble& e : cases) {
    const Ensemble back = parse_ensemble(serialize_ensemble(e));
    EXPECT_EQ(back, e) << serialize_ensemble(e);
    EXPECT_EQ(gram_matrix(back), gram_matrix(e));
  }
}

TEST(EnsembleIo, ProbabilitySumViolation) {
  const std::string text = R"({"dim": 2, "label": "bad", "members": [
    {"p": 0.45, "amplitudes": [[1, 0], [0, 0]]},
    {"p": 0.45, "amplitudes": [[0, 0], [1, 0]]}]})";
  EXPECT_EQ(kind_of([&] { parse_ensemble(text); }), ErrorKind::InvariantViolation);
}

TEST(EnsembleIo, UnnormalizedStateNamesMember) {
  const std::string text = R"({"dim": 2, "label": "bad", "members": [
    {"p": 0.5, "amplitudes": [[1, 0], [0, 0]]},
    {"p": 0.5, "amplitudes": [[1, 0], [1, 0]]}]})";
  EXPECT_EQ(kind_of([&] { parse_ensemble(text); }), ErrorKind::InvariantViolation);
  EXPECT_NE(message_of([&] { parse_ensemble(text); }).find("member 1"), std::string::npos);
}

TEST(EnsembleIo, ParseDiagnostics) {
  const std::string broken = "{\"dim\": 2,\n \"members\": [\n oops ]}";
  EXPECT_EQ(kind_of([&] { parse_ensemble(broken); }), ErrorKind::ParseError);
  EXPECT_NE(message_of([&] { parse_ensemble(broken); }).find("line 3"), std::string::npos);

  const std::string short_row = R"({"dim": 2, "label": "x", "members": [{"p": 1, "amplitudes": [[1, 0]]}]})";
  EXPECT_EQ(kind_of([&] { parse_ensemble(short_row); }), ErrorKind::ParseError);
  EXPECT_NE(message_of([&] { parse_ensemble(short_row); }).find("members[0].amplitudes"), std::string::npos);

  const std::string bad_pair = R"({"dim": 1, "label": "x", "members": [{"p": 1, "amplitudes": [[1]]}]})";
  EXPECT_EQ(kind_of([&] { parse_ensemble(bad_pair); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_ensemble(R"({"label": "x", "members": []})"); }), ErrorKind::ParseError);
}

TEST(EnsembleIo, LoadAndResolve) {
  const auto path = std::filesystem::temp_directory_path() / "gramq_test_trine.json";
  {
    std::ofstream out(path);
    out << serialize_ensemble(canonical(CanonicalName::trine));
  }
  EXPECT_EQ(load_ensemble(path), canonical(CanonicalName::trine));
  EXPECT_EQ(resolve_ensemble(path.string()), canonical(CanonicalName::trine));
  EXPECT_EQ(resolve_ensemble("bb84"), canonical(CanonicalName::bb84));
  EXPECT_EQ(kind_of([] { resolve_ensemble("/no/such/file.json"); }), ErrorKind::UnknownName);
  std::filesystem::remove(path);
}
