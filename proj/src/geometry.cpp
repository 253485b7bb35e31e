#include "symrep/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "symrep/characters.hpp"

namespace symrep {

namespace {

std::vector<FixedComponent> fixed_dims_with(const GroupData& G, const SplittingData& sd, std::size_t element) {
  const std::uint64_t o = G.element_orders[element];
  std::uint64_t pp = 1;
  while (o % (pp * G.p()) == 0) pp *= G.p();
  const std::uint64_t o_reg = o / pp;  // order of the p'-part
  // the p'-part has the same eigenvalues, so they are o_reg-th roots of unity
  const Field& T = *sd.embedding->to;
  Mat a = embed(G.elements[element], *sd.embedding);
  const std::size_t n = a.rows();
  std::vector<FixedComponent> out;
  const std::uint64_t step = sd.N / o_reg;
  for (std::uint64_t k = 0; k < o_reg; ++k) {
    Elem z = T.pow(sd.zeta, k * step);
    Mat b = a;
    for (std::size_t i = 0; i < n; ++i) b(i, i) = T.sub(b(i, i), z);
    std::size_t e = n - rank(b);
    if (e > 0) out.push_back({k * step, static_cast<int>(e) - 1});
  }
  return out;
}

}  // namespace

std::vector<FixedComponent> fixed_dims(const GroupPtr& g, std::size_t element) {
  if (element >= g->order) throw std::out_of_range("fixed_dims: bad element index");
  return fixed_dims_with(*g, splitting_data(*g), element);
}

RamificationReport ramification(const GroupPtr& g) {
  const GroupData& G = *g;
  RamificationReport rep;
  rep.d = static_cast<int>(G.rep.dim) - 1;
  SplittingData sd = splitting_data(G);
  rep.N = sd.N;
  const Field& F = *G.field();
  for (std::size_t i = 1; i < G.order; ++i) {
    const Mat& e = G.elements[i];
    bool scalar = true;
    for (std::size_t r = 0; r < e.rows() && scalar; ++r)
      for (std::size_t c = 0; c < e.cols(); ++c)
        if ((r == c && e(r, c) != e(0, 0)) || (r != c && e(r, c) != 0)) {
          scalar = false;
          break;
        }
    if (scalar)
      throw std::invalid_argument("ramification: element " + std::to_string(i) + " acts as the scalar " +
                                  F.format(e(0, 0)) + "; the action on P^d is not faithful");
    ElementFix ef;
    ef.index = i;
    ef.order = G.element_orders[i];
    ef.fixed = fixed_dims_with(G, sd, i);
    for (auto& c : ef.fixed) ef.max_dim = std::max(ef.max_dim, c.dim);
    rep.dimB = std::max(rep.dimB, ef.max_dim);
    if (G.is_p_element(i)) rep.dimBp = std::max(rep.dimBp, ef.max_dim);
    rep.elements.push_back(std::move(ef));
  }
  rep.c = rep.dimB;
  rep.cp = rep.dimBp;
  rep.faithful_on_P = true;
  rep.generically_free = true;
  return rep;
}

}  // namespace symrep
