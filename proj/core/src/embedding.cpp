#include "sphere7/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace sphere7::weyl {

namespace {

using lie::gen::Spinor;

template <class E>
Laurent<E> var(int s, const CRational& c = 1) {
  return Laurent<E>::single(0, E::variable(s, c));
}

template <class E>
Laurent<E> bilinear(int s, int t, const CRational& c) {
  Exponents e{};
  e[s] += 1;
  e[t] += 1;
  return Laurent<E>::single(0, E::monomial(e, c));
}

template <class E>
std::array<Laurent<E>, lie::kDim> build(const Laurent<E>& S, const E& number_sum) {
  using L = Laurent<E>;
  const CRational I = CRational::i();
  auto mul = [](const L& x, const L& y) { return L::multiply(x, y); };
  std::array<L, lie::kDim> g;
  g[Spinor::Jpp] = bilinear<E>(slot::ap_m, slot::ap_p, CRational(0, -2));
  g[Spinor::Jpm] = bilinear<E>(slot::am_m, slot::ap_p, CRational(0, -1)) +
                   bilinear<E>(slot::ap_m, slot::am_p, CRational(0, -1));
  g[Spinor::Jmm] = bilinear<E>(slot::am_m, slot::am_p, CRational(0, -2));

  g[Spinor::Ppp] = bilinear<E>(slot::ap_m, slot::a, -1) + mul(S, var<E>(slot::ap_p));
  g[Spinor::Ppm] = bilinear<E>(slot::adag, slot::ap_p, 1) + mul(var<E>(slot::ap_m), S);
  g[Spinor::Pmp] = bilinear<E>(slot::am_m, slot::a, -1) + mul(S, var<E>(slot::am_p));
  g[Spinor::Pmm] = bilinear<E>(slot::adag, slot::am_p, 1) + mul(var<E>(slot::am_m), S);

  g[Spinor::Kpp] = CRational(0, -2) * mul(S, var<E>(slot::a));
  g[Spinor::Kmm] = CRational(0, 2) * mul(var<E>(slot::adag), S);
  L kpm = L::single(-2, E::constant(I));
  kpm.add(0, CRational(0, -1) * number_sum);
  g[Spinor::Kpm] = kpm;
  return g;
}

template <class E>
Laurent<E> embed_impl(const lie::LieElement& x, const std::array<Laurent<E>, lie::kDim>& g) {
  if (x.basis() != lie::Basis::spinor) throw std::invalid_argument("embedding expects the spinor basis");
  Laurent<E> out;
  for (int a = 0; a < lie::kDim; ++a)
    if (!x[a].is_zero()) out += x[a] * g[a];
  return out;
}

template <class F>
EmbeddingReport run_pairs(int ell, int cap, int threads, F residual) {
  EmbeddingReport rep;
  rep.ell = ell;
  rep.cap = cap;
  for (int a = 0; a < lie::kDim; ++a)
    for (int b = a + 1; b < lie::kDim; ++b) rep.pairs.push_back({a, b, std::nullopt});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rep.pairs.size(); i = next++) {
      auto& p = rep.pairs[i];
      p.min_grade = residual(p.a, p.b);
    }
  };
  const int n = std::max(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rep;
}

}  // namespace

QuantumGenerators embedded_generators(int ell) {
  const LaurentElement S = sqrt_partial_sum(ell).to_laurent();
  return build<WeylElement>(S, number_total() + number_small());
}

ClassicalGenerators classical_generators(int ell) {
  const ClassicalLaurent S = sqrt_partial_sum(ell).to_classical();
  return build<PoissonPolynomial>(S, classical_number_total() + classical_number_small());
}

LaurentElement embed(const lie::LieElement& x, const QuantumGenerators& g) { return embed_impl(x, g); }

ClassicalLaurent embed(const lie::LieElement& x, const ClassicalGenerators& g) {
  return embed_impl(x, g);
}

std::string BracketResidual::pair_name() const {
  return std::string(lie::generator_name(lie::Basis::spinor, a)) + "," +
         lie::generator_name(lie::Basis::spinor, b);
}

const BracketResidual& EmbeddingReport::pair(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (const auto& p : pairs)
    if (p.a == a && p.b == b) return p;
  throw std::out_of_range("no such generator pair");
}

std::optional<int> EmbeddingReport::worst_grade() const {
  std::optional<int> w;
  for (const auto& p : pairs)
    if (p.min_grade && (!w || *p.min_grade < *w)) w = p.min_grade;
  return w;
}

EmbeddingReport verify_embedding(int ell, int cap, int threads) {
  if (ell < 0) throw std::domain_error("negative truncation order");
  const QuantumGenerators g = embedded_generators(ell);
  return run_pairs(ell, cap, threads, [&](int a, int b) {
    const lie::LieElement target = lie::bracket(lie::LieElement::generator(lie::Basis::spinor, a),
                                                lie::LieElement::generator(lie::Basis::spinor, b));
    const LaurentElement r = LaurentElement::commutator(g[a], g[b], cap) - embed(target, g).truncated(cap);
    return r.min_grade();
  });
}

EmbeddingReport verify_classical(int ell, int cap, int threads) {
  if (ell < 0) throw std::domain_error("negative truncation order");
  const ClassicalGenerators g = classical_generators(ell);
  return run_pairs(ell, cap, threads, [&](int a, int b) {
    const lie::LieElement target = lie::bracket(lie::LieElement::generator(lie::Basis::spinor, a),
                                                lie::LieElement::generator(lie::Basis::spinor, b));
    const ClassicalLaurent r =
        poisson_bracket(g[a], g[b], cap) + CRational::i() * embed(target, g).truncated(cap);
    return r.min_grade();
  });
}

bool verify_reality(int ell) {
  const QuantumGenerators g = embedded_generators(ell);
  for (int a = 0; a < lie::kDim; ++a)
    if (!(g[a].dagger() == embed(lie::reality(a), g))) return false;
  return true;
}

bool uses_square_root(int spinor_index) {
  return spinor_index >= Spinor::Ppp && spinor_index != Spinor::Kpm;
}

}  // namespace sphere7::weyl
