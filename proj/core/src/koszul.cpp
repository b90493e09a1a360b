#include "facetforest/koszul.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "facetforest/covers.hpp"

namespace facetforest {

// ---------------------------------------------------------------------------
// Multidegree

int Multidegree::total() const {
  int s = 0;
  for (int e : exponents) s += e;
  return s;
}

bool Multidegree::is_zero() const {
  return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

bool Multidegree::leq(const Multidegree& other) const {
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] > other.exponents[i]) return false;
  return true;
}

Multidegree Multidegree::plus(const Multidegree& other) const {
  Multidegree out = *this;
  for (std::size_t i = 0; i < exponents.size(); ++i) out.exponents[i] += other.exponents[i];
  return out;
}

Multidegree Multidegree::plus_e(int v) const {
  Multidegree out = *this;
  ++out.exponents[static_cast<std::size_t>(v)];
  return out;
}

std::optional<Multidegree> Multidegree::minus(const Multidegree& other) const {
  Multidegree out = *this;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    out.exponents[i] -= other.exponents[i];
    if (out.exponents[i] < 0) return std::nullopt;
  }
  return out;
}

std::string Multidegree::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(exponents[i]);
  }
  return out + ")";
}

Multidegree degree_of_mask(Mask support, int nvars) {
  Multidegree d = Multidegree::zeros(nvars);
  for_each_bit(support, [&](int v) { d.exponents[static_cast<std::size_t>(v)] = 1; });
  return d;
}

// ---------------------------------------------------------------------------
// Koszul complex bookkeeping

KoszulDescriptor KoszulDescriptor::of(const MonomialIdeal& ideal) {
  if (ideal.is_unit()) throw DomainError("Koszul complex of the unit ideal is not defined here");
  int q = ideal.generator_count();
  if (q > 20) throw ResourceLimitError("Koszul complex on more than 20 generators");
  int n = ideal.universe()->size();
  KoszulDescriptor out;
  out.q = q;
  out.nvars = n;
  out.levels.assign(static_cast<std::size_t>(q + 1), {});
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << q); ++s) {
    Multidegree d = Multidegree::zeros(n);
    for (int j = 0; j < q; ++j)
      if (s & (std::uint32_t{1} << j))
        d = d.plus(degree_of_mask(ideal.generator_masks()[static_cast<std::size_t>(j)], n));
    out.levels[static_cast<std::size_t>(std::popcount(s))].push_back({s, std::move(d)});
  }
  return out;
}

namespace {

int subset_sign(int j, std::uint32_t s) {
  return std::popcount(s & ((std::uint32_t{1} << j) - 1)) % 2 == 0 ? 1 : -1;
}

std::vector<int> active_elements(const std::vector<KoszulBasisElement>& level, const Multidegree& a) {
  std::vector<int> out;
  for (std::size_t k = 0; k < level.size(); ++k)
    if (level[k].degree.leq(a)) out.push_back(static_cast<int>(k));
  return out;
}

// Slice of the Koszul differential level -> level-1 in degree a, given the
// active element lists of both levels.
IntMat slice_matrix(const KoszulDescriptor& K, int level, const Multidegree& /*a*/,
                    const std::vector<int>& act_here, const std::vector<int>& act_below) {
  IntMat m(static_cast<int>(act_below.size()), static_cast<int>(act_here.size()));
  if (level <= 0 || level > K.q) return m;
  std::unordered_map<std::uint32_t, int> row;
  for (std::size_t k = 0; k < act_below.size(); ++k)
    row.emplace(K.levels[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(act_below[k])].subset,
                static_cast<int>(k));
  for (std::size_t c = 0; c < act_here.size(); ++c) {
    std::uint32_t s = K.levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(act_here[c])].subset;
    for (int j = 0; j < K.q; ++j) {
      if (!(s & (std::uint32_t{1} << j))) continue;
      // deg e_{S\j} <= deg e_S <= a, so the target is always active.
      m.at(row.at(s & ~(std::uint32_t{1} << j)), static_cast<int>(c)) = subset_sign(j, s);
    }
  }
  return m;
}

std::vector<KoszulSliceElement> slice_basis(const KoszulDescriptor& K, int level, const Multidegree& a,
                                            const std::vector<int>& active) {
  std::vector<KoszulSliceElement> out;
  out.reserve(active.size());
  for (int k : active) {
    const auto& el = K.levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(k)];
    out.push_back({el.subset, *a.minus(el.degree)});
  }
  return out;
}

}  // namespace

KoszulSlice koszul_component(const MonomialIdeal& ideal, int i, const Multidegree& a) {
  if (a.size() != ideal.universe()->size())
    throw DomainError("multidegree arity does not match the variable count");
  auto K = KoszulDescriptor::of(ideal);
  KoszulSlice out;
  out.i = i;
  out.degree = a;
  auto active_or_empty = [&](int level) -> std::vector<int> {
    if (level < 0 || level > K.q) return {};
    return active_elements(K.levels[static_cast<std::size_t>(level)], a);
  };
  auto above = active_or_empty(i + 1);
  auto here = active_or_empty(i);
  auto below = active_or_empty(i - 1);
  if (i >= 0 && i <= K.q) out.basis_here = slice_basis(K, i, a, here);
  if (i + 1 >= 0 && i + 1 <= K.q) out.basis_above = slice_basis(K, i + 1, a, above);
  if (i - 1 >= 0 && i - 1 <= K.q) out.basis_below = slice_basis(K, i - 1, a, below);
  out.d_above = slice_matrix(K, i + 1, a, above, here);
  out.d_here = slice_matrix(K, i, a, here, below);
  return out;
}

// ---------------------------------------------------------------------------
// Degree boxes and graded modules evaluated over them

namespace {

struct DegreeBox {
  Multidegree top;
  std::vector<std::int64_t> strides;
  std::int64_t size = 0;

  static DegreeBox upto(const Multidegree& top, std::int64_t max_box) {
    DegreeBox b;
    b.top = top;
    b.strides.resize(static_cast<std::size_t>(top.size()));
    std::int64_t s = 1;
    for (int v = 0; v < top.size(); ++v) {
      b.strides[static_cast<std::size_t>(v)] = s;
      s *= top.at(v) + 1;
      if (s > max_box)
        throw ResourceLimitError("degree box " + top.str() + " exceeds the configured cap");
    }
    b.size = s;
    return b;
  }

  std::int64_t index(const Multidegree& a) const {
    std::int64_t idx = 0;
    for (int v = 0; v < top.size(); ++v) idx += a.at(v) * strides[static_cast<std::size_t>(v)];
    return idx;
  }

  Multidegree degree(std::int64_t idx) const {
    Multidegree a = Multidegree::zeros(top.size());
    for (int v = 0; v < top.size(); ++v) {
      a.exponents[static_cast<std::size_t>(v)] = static_cast<int>(idx % (top.at(v) + 1));
      idx /= top.at(v) + 1;
    }
    return a;
  }
};

template <class F>
std::vector<typename F::Elem> mat_vec(const F& f, const Mat<F>& m,
                                      const std::vector<typename F::Elem>& v) {
  std::vector<typename F::Elem> out(static_cast<std::size_t>(m.rows), f.zero());
  for (int j = 0; j < m.cols; ++j) {
    if (f.is_zero(v[static_cast<std::size_t>(j)])) continue;
    for (int i = 0; i < m.rows; ++i)
      out[static_cast<std::size_t>(i)] =
          f.add(out[static_cast<std::size_t>(i)], f.mul(m.at(i, j), v[static_cast<std::size_t>(j)]));
  }
  return out;
}

/// One degree of a subquotient module: representatives of the chosen basis
/// inside the ambient coordinate space, plus the [B | reps] solver used to
/// rewrite an ambient vector of the subspace span(B, reps) in module
/// coordinates (the trailing block of the solution).
template <class F>
struct DegreeData {
  int ambient = 0;
  Mat<F> reps;
  Mat<F> solver;
};

template <class F>
struct GradedModule {
  DegreeBox box;
  std::vector<int> dims;
  std::vector<DegreeData<F>> data;
  // actions[v][idx]: M_a -> M_{a+e_v}; stored empty when either side is 0.
  std::vector<std::vector<Mat<F>>> actions;

  std::int64_t total_dim() const {
    std::int64_t s = 0;
    for (int d : dims) s += d;
    return s;
  }
  bool is_zero() const { return total_dim() == 0; }
};

template <class F>
DegreeData<F> make_subquotient(const F& f, int ambient, const Mat<F>& b, const Mat<F>& candidates) {
  auto chosen = independent_columns(f, b, candidates);
  DegreeData<F> out;
  out.ambient = ambient;
  out.reps = candidates.columns(f, chosen);
  out.solver = b.hcat(f, out.reps);
  return out;
}

/// Module coordinates of an ambient vector lying in span(B, reps).
template <class F>
std::vector<typename F::Elem> module_coords(const F& f, const DegreeData<F>& d,
                                            const std::vector<typename F::Elem>& ambient_vec) {
  auto x = solve(f, d.solver, ambient_vec);
  if (!x) throw Error("internal: vector not in the tracked subspace");
  int aux = d.solver.cols - d.reps.cols;
  return std::vector<typename F::Elem>(x->begin() + aux, x->end());
}

// --- Koszul homology H_i as a graded module over the box --------------------

template <class F>
GradedModule<F> koszul_homology_module(const F& f, const KoszulDescriptor& K, int i,
                                       const DegreeBox& box) {
  int n = K.nvars;
  GradedModule<F> m;
  m.box = box;
  m.dims.assign(static_cast<std::size_t>(box.size), 0);
  m.data.resize(static_cast<std::size_t>(box.size));
  m.actions.assign(static_cast<std::size_t>(n), std::vector<Mat<F>>(static_cast<std::size_t>(box.size)));
  if (i < 0 || i > K.q) return m;

  const auto& level_here = K.levels[static_cast<std::size_t>(i)];
  std::vector<std::vector<int>> here_by_idx(static_cast<std::size_t>(box.size));

  for (std::int64_t idx = 0; idx < box.size; ++idx) {
    Multidegree a = box.degree(idx);
    auto here = active_elements(level_here, a);
    here_by_idx[static_cast<std::size_t>(idx)] = here;
    auto below = i - 1 >= 0 ? active_elements(K.levels[static_cast<std::size_t>(i - 1)], a) : std::vector<int>{};
    auto above = i + 1 <= K.q ? active_elements(K.levels[static_cast<std::size_t>(i + 1)], a) : std::vector<int>{};
    IntMat d_here = slice_matrix(K, i, a, here, below);
    IntMat d_above = slice_matrix(K, i + 1, a, above, here);
    auto fd_here = Mat<F>::from_int(f, d_here);
    auto fd_above = Mat<F>::from_int(f, d_above);
    Mat<F> cycles = kernel_basis(f, fd_here);
    Mat<F> none(f, static_cast<int>(here.size()), 0);
    auto b_cols = independent_columns(f, none, fd_above);
    Mat<F> b = fd_above.columns(f, b_cols);
    m.data[static_cast<std::size_t>(idx)] = make_subquotient(f, static_cast<int>(here.size()), b, cycles);
    m.dims[static_cast<std::size_t>(idx)] = m.data[static_cast<std::size_t>(idx)].reps.cols;
  }

  for (std::int64_t idx = 0; idx < box.size; ++idx) {
    if (m.dims[static_cast<std::size_t>(idx)] == 0) continue;
    Multidegree a = box.degree(idx);
    const auto& here = here_by_idx[static_cast<std::size_t>(idx)];
    for (int v = 0; v < n; ++v) {
      if (a.at(v) >= box.top.at(v)) continue;
      std::int64_t tidx = idx + box.strides[static_cast<std::size_t>(v)];
      int td = m.dims[static_cast<std::size_t>(tidx)];
      if (td == 0) continue;
      const auto& there = here_by_idx[static_cast<std::size_t>(tidx)];
      // Slice basis (S, x^m) -> (S, x^{m+e_v}); both lists are ascending in
      // S, and every source subset stays active at the larger degree.
      std::unordered_map<std::uint32_t, int> tpos;
      for (std::size_t k = 0; k < there.size(); ++k)
        tpos.emplace(level_here[static_cast<std::size_t>(there[k])].subset, static_cast<int>(k));
      const auto& src = m.data[static_cast<std::size_t>(idx)];
      const auto& dst = m.data[static_cast<std::size_t>(tidx)];
      Mat<F> action(f, td, src.reps.cols);
      for (int c = 0; c < src.reps.cols; ++c) {
        std::vector<typename F::Elem> shifted(static_cast<std::size_t>(dst.ambient), f.zero());
        for (std::size_t k = 0; k < here.size(); ++k) {
          int target_row = tpos.at(level_here[static_cast<std::size_t>(here[k])].subset);
          shifted[static_cast<std::size_t>(target_row)] = src.reps.at(static_cast<int>(k), c);
        }
        auto coords = module_coords(f, dst, shifted);
        for (int r = 0; r < td; ++r) action.at(r, c) = coords[static_cast<std::size_t>(r)];
      }
      m.actions[static_cast<std::size_t>(v)][static_cast<std::size_t>(idx)] = std::move(action);
    }
  }
  return m;
}

// --- Free modules and presentation cokernels --------------------------------

std::vector<int> active_generators(const std::vector<Multidegree>& gens, const Multidegree& a) {
  std::vector<int> out;
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (gens[j].leq(a)) out.push_back(static_cast<int>(j));
  return out;
}

template <class F>
GradedModule<F> free_module(const F& f, const std::vector<Multidegree>& gens, const DegreeBox& box,
                            int nvars) {
  GradedModule<F> m;
  m.box = box;
  m.dims.assign(static_cast<std::size_t>(box.size), 0);
  m.data.resize(static_cast<std::size_t>(box.size));
  m.actions.assign(static_cast<std::size_t>(nvars),
                   std::vector<Mat<F>>(static_cast<std::size_t>(box.size)));
  for (std::int64_t idx = 0; idx < box.size; ++idx) {
    Multidegree a = box.degree(idx);
    auto act = active_generators(gens, a);
    m.dims[static_cast<std::size_t>(idx)] = static_cast<int>(act.size());
    for (int v = 0; v < nvars; ++v) {
      if (a.at(v) >= box.top.at(v) || act.empty()) continue;
      std::int64_t tidx = idx + box.strides[static_cast<std::size_t>(v)];
      auto tact = active_generators(gens, box.degree(tidx));
      Mat<F> action(f, static_cast<int>(tact.size()), static_cast<int>(act.size()));
      for (std::size_t c = 0; c < act.size(); ++c) {
        auto it = std::find(tact.begin(), tact.end(), act[c]);
        action.at(static_cast<int>(it - tact.begin()), static_cast<int>(c)) = f.one();
      }
      m.actions[static_cast<std::size_t>(v)][static_cast<std::size_t>(idx)] = std::move(action);
    }
  }
  return m;
}

template <class F>
typename F::Elem scalar_from_rational(const F& f, const Rational& r);

template <>
RationalField::Elem scalar_from_rational<RationalField>(const RationalField&, const Rational& r) {
  return r;
}

template <>
PrimeField::Elem scalar_from_rational<PrimeField>(const PrimeField& f, const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  auto reduce = [&](const BigInt& x) {
    BigInt m = x % f.p;
    if (m < 0) m += f.p;
    return m.convert_to<std::int64_t>();
  };
  return f.div(reduce(num), reduce(den));
}

/// Cokernel of the presentation's relation matrix, evaluated over the box.
template <class F>
GradedModule<F> coker_module(const F& f, const MultigradedPresentation& pres, const DegreeBox& box) {
  int n = pres.nvars;
  const auto& gens = pres.generator_degrees;
  GradedModule<F> m;
  m.box = box;
  m.dims.assign(static_cast<std::size_t>(box.size), 0);
  m.data.resize(static_cast<std::size_t>(box.size));
  m.actions.assign(static_cast<std::size_t>(n), std::vector<Mat<F>>(static_cast<std::size_t>(box.size)));

  std::vector<std::vector<int>> act_by_idx(static_cast<std::size_t>(box.size));
  for (std::int64_t idx = 0; idx < box.size; ++idx) {
    Multidegree a = box.degree(idx);
    auto act = active_generators(gens, a);
    act_by_idx[static_cast<std::size_t>(idx)] = act;
    std::vector<int> gen_pos(gens.size(), -1);
    for (std::size_t k = 0; k < act.size(); ++k) gen_pos[static_cast<std::size_t>(act[k])] = static_cast<int>(k);
    // Image of the relations in this degree: each relation column of degree
    // r <= a contributes the same scalar pattern, shifted by x^{a-r}.
    std::vector<const PresentationColumn*> live;
    for (const auto& col : pres.relations)
      if (col.degree.leq(a)) live.push_back(&col);
    Mat<F> image(f, static_cast<int>(act.size()), static_cast<int>(live.size()));
    for (std::size_t c = 0; c < live.size(); ++c)
      for (const auto& entry : live[c]->entries)
        image.at(gen_pos[static_cast<std::size_t>(entry.generator)], static_cast<int>(c)) =
            scalar_from_rational(f, entry.scalar);
    Mat<F> identity(f, static_cast<int>(act.size()), static_cast<int>(act.size()));
    for (int k = 0; k < identity.rows; ++k) identity.at(k, k) = f.one();
    Mat<F> none(f, static_cast<int>(act.size()), 0);
    auto b_cols = independent_columns(f, none, image);
    Mat<F> b = image.columns(f, b_cols);
    m.data[static_cast<std::size_t>(idx)] = make_subquotient(f, static_cast<int>(act.size()), b, identity);
    m.dims[static_cast<std::size_t>(idx)] = m.data[static_cast<std::size_t>(idx)].reps.cols;
  }

  for (std::int64_t idx = 0; idx < box.size; ++idx) {
    if (m.dims[static_cast<std::size_t>(idx)] == 0) continue;
    Multidegree a = box.degree(idx);
    const auto& act = act_by_idx[static_cast<std::size_t>(idx)];
    for (int v = 0; v < n; ++v) {
      if (a.at(v) >= box.top.at(v)) continue;
      std::int64_t tidx = idx + box.strides[static_cast<std::size_t>(v)];
      int td = m.dims[static_cast<std::size_t>(tidx)];
      if (td == 0) continue;
      const auto& tact = act_by_idx[static_cast<std::size_t>(tidx)];
      const auto& src = m.data[static_cast<std::size_t>(idx)];
      const auto& dst = m.data[static_cast<std::size_t>(tidx)];
      Mat<F> action(f, td, src.reps.cols);
      for (int c = 0; c < src.reps.cols; ++c) {
        std::vector<typename F::Elem> shifted(static_cast<std::size_t>(dst.ambient), f.zero());
        for (std::size_t k = 0; k < act.size(); ++k) {
          auto it = std::find(tact.begin(), tact.end(), act[k]);
          shifted[static_cast<std::size_t>(it - tact.begin())] = src.reps.at(static_cast<int>(k), c);
        }
        auto coords = module_coords(f, dst, shifted);
        for (int r = 0; r < td; ++r) action.at(r, c) = coords[static_cast<std::size_t>(r)];
      }
      m.actions[static_cast<std::size_t>(v)][static_cast<std::size_t>(idx)] = std::move(action);
    }
  }
  return m;
}

// --- Minimal generators, presentation maps, kernel modules ------------------

template <class F>
struct ModuleGenerator {
  std::int64_t idx;
  Multidegree degree;
  std::vector<typename F::Elem> rep;  // module coordinates at its degree
};

template <class F>
std::vector<ModuleGenerator<F>> minimal_generators(const F& f, const GradedModule<F>& m) {
  std::vector<ModuleGenerator<F>> out;
  int n = m.box.top.size();
  for (std::int64_t idx = 0; idx < m.box.size; ++idx) {
    int d = m.dims[static_cast<std::size_t>(idx)];
    if (d == 0) continue;
    Multidegree a = m.box.degree(idx);
    // Incoming image: columns of every x_v action landing here.
    std::vector<const Mat<F>*> blocks;
    int cols = 0;
    for (int v = 0; v < n; ++v) {
      if (a.at(v) == 0) continue;
      const auto& mat = m.actions[static_cast<std::size_t>(v)][static_cast<std::size_t>(idx - m.box.strides[static_cast<std::size_t>(v)])];
      if (mat.cols == 0) continue;
      blocks.push_back(&mat);
      cols += mat.cols;
    }
    Mat<F> incoming(f, d, cols);
    int off = 0;
    for (const auto* blk : blocks) {
      for (int j = 0; j < blk->cols; ++j)
        for (int i = 0; i < d; ++i) incoming.at(i, off + j) = blk->at(i, j);
      off += blk->cols;
    }
    Mat<F> identity(f, d, d);
    for (int k = 0; k < d; ++k) identity.at(k, k) = f.one();
    auto fresh = independent_columns(f, incoming, identity);
    for (int k : fresh) {
      std::vector<typename F::Elem> rep(static_cast<std::size_t>(d), f.zero());
      rep[static_cast<std::size_t>(k)] = f.one();
      out.push_back({idx, a, std::move(rep)});
    }
  }
  return out;
}

/// Degreewise matrices of the map F0 -> M sending the j-th free generator to
/// gens[j], with F0 the free module on the generator degrees.
template <class F>
std::vector<Mat<F>> presentation_map(const F& f, const GradedModule<F>& m,
                                     const std::vector<ModuleGenerator<F>>& gens) {
  int n = m.box.top.size();
  // vecs[j][idx] = module coordinates of x^(a - deg g_j) * g_j.
  std::vector<std::vector<std::vector<typename F::Elem>>> vecs(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    vecs[j].assign(static_cast<std::size_t>(m.box.size), {});
    for (std::int64_t idx = 0; idx < m.box.size; ++idx) {
      Multidegree a = m.box.degree(idx);
      if (!gens[j].degree.leq(a)) continue;
      if (idx == gens[j].idx) {
        vecs[j][static_cast<std::size_t>(idx)] = gens[j].rep;
        continue;
      }
      int v = -1;
      for (int w = 0; w < n; ++w)
        if (a.at(w) > gens[j].degree.at(w)) {
          v = w;
          break;
        }
      std::int64_t sidx = idx - m.box.strides[static_cast<std::size_t>(v)];
      const auto& source = vecs[j][static_cast<std::size_t>(sidx)];
      int td = m.dims[static_cast<std::size_t>(idx)];
      if (m.dims[static_cast<std::size_t>(sidx)] == 0 || td == 0) {
        vecs[j][static_cast<std::size_t>(idx)] =
            std::vector<typename F::Elem>(static_cast<std::size_t>(td), f.zero());
        continue;
      }
      vecs[j][static_cast<std::size_t>(idx)] =
          mat_vec(f, m.actions[static_cast<std::size_t>(v)][static_cast<std::size_t>(sidx)], source);
    }
  }
  std::vector<Multidegree> gen_degrees;
  gen_degrees.reserve(gens.size());
  for (const auto& g : gens) gen_degrees.push_back(g.degree);
  std::vector<Mat<F>> phi(static_cast<std::size_t>(m.box.size));
  for (std::int64_t idx = 0; idx < m.box.size; ++idx) {
    Multidegree a = m.box.degree(idx);
    auto act = active_generators(gen_degrees, a);
    Mat<F> col(f, m.dims[static_cast<std::size_t>(idx)], static_cast<int>(act.size()));
    for (std::size_t c = 0; c < act.size(); ++c) {
      const auto& vec = vecs[static_cast<std::size_t>(act[c])][static_cast<std::size_t>(idx)];
      for (int r = 0; r < col.rows; ++r) col.at(r, static_cast<int>(c)) = vec[static_cast<std::size_t>(r)];
    }
    phi[static_cast<std::size_t>(idx)] = std::move(col);
  }
  return phi;
}

/// Kernel of a degreewise map out of the free module on gen_degrees, as a
/// graded module whose ambient coordinates are the free-module coordinates.
template <class F>
GradedModule<F> kernel_module(const F& f, const std::vector<Multidegree>& gen_degrees,
                              const std::vector<Mat<F>>& phi, const DegreeBox& box, int nvars) {
  GradedModule<F> k;
  k.box = box;
  k.dims.assign(static_cast<std::size_t>(box.size), 0);
  k.data.resize(static_cast<std::size_t>(box.size));
  k.actions.assign(static_cast<std::size_t>(nvars),
                   std::vector<Mat<F>>(static_cast<std::size_t>(box.size)));
  std::vector<std::vector<int>> act_by_idx(static_cast<std::size_t>(box.size));
  for (std::int64_t idx = 0; idx < box.size; ++idx) {
    Multidegree a = box.degree(idx);
    act_by_idx[static_cast<std::size_t>(idx)] = active_generators(gen_degrees, a);
    Mat<F> basis = kernel_basis(f, phi[static_cast<std::size_t>(idx)]);
    DegreeData<F> d;
    d.ambient = phi[static_cast<std::size_t>(idx)].cols;
    d.reps = basis;
    d.solver = basis;
    k.data[static_cast<std::size_t>(idx)] = std::move(d);
    k.dims[static_cast<std::size_t>(idx)] = basis.cols;
  }
  for (std::int64_t idx = 0; idx < box.size; ++idx) {
    if (k.dims[static_cast<std::size_t>(idx)] == 0) continue;
    Multidegree a = box.degree(idx);
    const auto& act = act_by_idx[static_cast<std::size_t>(idx)];
    for (int v = 0; v < nvars; ++v) {
      if (a.at(v) >= box.top.at(v)) continue;
      std::int64_t tidx = idx + box.strides[static_cast<std::size_t>(v)];
      if (k.dims[static_cast<std::size_t>(tidx)] == 0) continue;
      const auto& tact = act_by_idx[static_cast<std::size_t>(tidx)];
      const auto& src = k.data[static_cast<std::size_t>(idx)];
      const auto& dst = k.data[static_cast<std::size_t>(tidx)];
      Mat<F> action(f, k.dims[static_cast<std::size_t>(tidx)], src.reps.cols);
      for (int c = 0; c < src.reps.cols; ++c) {
        std::vector<typename F::Elem> shifted(static_cast<std::size_t>(dst.ambient), f.zero());
        for (std::size_t p = 0; p < act.size(); ++p) {
          auto it = std::find(tact.begin(), tact.end(), act[p]);
          shifted[static_cast<std::size_t>(it - tact.begin())] = src.reps.at(static_cast<int>(p), c);
        }
        auto coords = module_coords(f, dst, shifted);
        for (int r = 0; r < action.rows; ++r) action.at(r, c) = coords[static_cast<std::size_t>(r)];
      }
      k.actions[static_cast<std::size_t>(v)][static_cast<std::size_t>(idx)] = std::move(action);
    }
  }
  return k;
}

// --- Betti numbers via the Koszul complex on the variables ------------------

int rank_fast(const RationalField& f, const Mat<RationalField>& m) {
  IntMat im(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const auto& e = m.at(i, j);
      if (boost::multiprecision::denominator(e) != 1) return rank(f, m);
      BigInt num = boost::multiprecision::numerator(e);
      if (num > (std::int64_t{1} << 40) || num < -(std::int64_t{1} << 40)) return rank(f, m);
      im.at(i, j) = num.convert_to<std::int64_t>();
    }
  return rank_over_Q(im);
}

int rank_fast(const PrimeField& f, const Mat<PrimeField>& m) { return rank(f, m); }

template <class F>
std::vector<BettiEntry> betti_numbers(const F& f, const GradedModule<F>& m, int nvars) {
  if (nvars > 16) throw ResourceLimitError("Betti computation over more than 16 variables");
  std::vector<BettiEntry> out;
  std::uint32_t nsubsets = std::uint32_t{1} << nvars;
  for (std::int64_t idx = 0; idx < m.box.size; ++idx) {
    Multidegree a = m.box.degree(idx);
    // Active summands M_{a - e_T} per subset T of the variables.
    std::vector<std::int64_t> tidx(nsubsets, -1);
    std::vector<int> tdim(nsubsets, 0);
    bool any = false;
    for (std::uint32_t t = 0; t < nsubsets; ++t) {
      std::int64_t at = idx;
      bool ok = true;
      for (int v = 0; v < nvars && ok; ++v)
        if (t & (std::uint32_t{1} << v)) {
          if (a.at(v) == 0)
            ok = false;
          else
            at -= m.box.strides[static_cast<std::size_t>(v)];
        }
      if (!ok) continue;
      tidx[t] = at;
      tdim[t] = m.dims[static_cast<std::size_t>(at)];
      if (tdim[t] > 0) any = true;
    }
    if (!any) continue;

    // Column layout per homological level.
    std::vector<std::vector<std::uint32_t>> level_subsets(static_cast<std::size_t>(nvars + 1));
    for (std::uint32_t t = 0; t < nsubsets; ++t)
      if (tdim[t] > 0) level_subsets[static_cast<std::size_t>(std::popcount(t))].push_back(t);
    std::vector<int> level_dim(static_cast<std::size_t>(nvars + 2), 0);
    for (int j = 0; j <= nvars; ++j)
      for (std::uint32_t t : level_subsets[static_cast<std::size_t>(j)]) level_dim[static_cast<std::size_t>(j)] += tdim[t];

    std::vector<int> ranks(static_cast<std::size_t>(nvars + 2), 0);  // ranks[j] = rank D_j
    for (int j = 1; j <= nvars; ++j) {
      if (level_dim[static_cast<std::size_t>(j)] == 0 || level_dim[static_cast<std::size_t>(j - 1)] == 0) continue;
      std::unordered_map<std::uint32_t, int> row_off;
      int off = 0;
      for (std::uint32_t t : level_subsets[static_cast<std::size_t>(j - 1)]) {
        row_off.emplace(t, off);
        off += tdim[t];
      }
      Mat<F> d(f, level_dim[static_cast<std::size_t>(j - 1)], level_dim[static_cast<std::size_t>(j)]);
      int col_off = 0;
      for (std::uint32_t t : level_subsets[static_cast<std::size_t>(j)]) {
        for (int v = 0; v < nvars; ++v) {
          if (!(t & (std::uint32_t{1} << v))) continue;
          std::uint32_t t2 = t & ~(std::uint32_t{1} << v);
          auto it = row_off.find(t2);
          if (it == row_off.end()) continue;  // target summand is zero
          const auto& action = m.actions[static_cast<std::size_t>(v)][static_cast<std::size_t>(tidx[t])];
          if (action.cols == 0) continue;
          int sign = subset_sign(v, t);
          for (int c = 0; c < action.cols; ++c)
            for (int r = 0; r < action.rows; ++r) {
              auto val = sign > 0 ? action.at(r, c) : f.neg(action.at(r, c));
              d.at(it->second + r, col_off + c) = val;
            }
        }
        col_off += tdim[t];
      }
      ranks[static_cast<std::size_t>(j)] = rank_fast(f, d);
    }
    for (int j = 0; j <= nvars; ++j) {
      int beta = level_dim[static_cast<std::size_t>(j)] - ranks[static_cast<std::size_t>(j)] -
                 ranks[static_cast<std::size_t>(j + 1)];
      if (beta > 0) out.push_back({j, a, beta});
    }
  }
  std::sort(out.begin(), out.end(), [](const BettiEntry& x, const BettiEntry& y) {
    if (x.index != y.index) return x.index < y.index;
    return x.degree < y.degree;
  });
  return out;
}

// --- Stability rule ----------------------------------------------------------

Multidegree plus_ones(const Multidegree& a, int slack) {
  Multidegree out = a;
  for (auto& e : out.exponents) e += slack;
  return out;
}

/// Runs `compute` over boxes [0, base + slack] for slack = 0, 1, ...; accepts
/// as soon as two consecutive runs agree under `same`, and fails loudly with
/// both renderings after the configured number of enlargements.
template <class T>
std::pair<T, int> stabilized(const std::function<T(const Multidegree&)>& compute,
                             const std::function<bool(const T&, const T&)>& same,
                             const std::function<std::string(const T&)>& render,
                             const Multidegree& base) {
  constexpr int kMaxRounds = 3;
  T prev = compute(base);
  for (int slack = 1; slack <= kMaxRounds; ++slack) {
    T cur = compute(plus_ones(base, slack));
    if (same(prev, cur)) return {std::move(cur), slack + 1};
    if (slack == kMaxRounds) {
      std::ostringstream msg;
      msg << "degreewise computation did not stabilize under box enlargement\n"
          << "box [0, " << plus_ones(base, slack - 1).str() << "]:\n"
          << render(prev) << "box [0, " << plus_ones(base, slack).str() << "]:\n"
          << render(cur);
      throw BoxUnstableError(msg.str());
    }
    prev = std::move(cur);
  }
  throw Error("internal: unreachable");
}

std::string render_betti(const std::vector<BettiEntry>& entries) {
  std::ostringstream out;
  for (const auto& e : entries)
    out << "  Tor_" << e.index << " degree " << e.degree.str() << " rank " << e.rank << "\n";
  if (entries.empty()) out << "  (no nonzero entries)\n";
  return out.str();
}

Multidegree sigma_of(const MonomialIdeal& ideal) {
  Multidegree s = Multidegree::zeros(ideal.universe()->size());
  for (Mask g : ideal.generator_masks()) s = s.plus(degree_of_mask(g, ideal.universe()->size()));
  return s;
}

void check_caps(const MonomialIdeal& ideal, const KoszulCaps& caps) {
  if (!caps.enforce) return;
  if (ideal.universe()->size() > caps.max_vars)
    throw ResourceLimitError("ideal exceeds the variable cap (" + std::to_string(caps.max_vars) +
                             "); raise the cap to proceed");
  if (ideal.generator_count() > caps.max_gens)
    throw ResourceLimitError("ideal exceeds the generator cap (" + std::to_string(caps.max_gens) +
                             "); raise the cap to proceed");
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations

namespace {

struct HomologySnapshot {
  bool nonzero = false;
  std::int64_t dim_in_box = 0;
  std::vector<BettiEntry> betti;  // of the homology module, when nonzero
};

bool same_snapshot(const HomologySnapshot& a, const HomologySnapshot& b) {
  return a.nonzero == b.nonzero && a.betti == b.betti;
}

template <class F>
HomologySnapshot snapshot_homology(const F& f, const KoszulDescriptor& K, int i,
                                   const Multidegree& top, std::int64_t max_box) {
  auto box = DegreeBox::upto(top, max_box);
  auto m = koszul_homology_module(f, K, i, box);
  HomologySnapshot s;
  s.dim_in_box = m.total_dim();
  s.nonzero = !m.is_zero();
  if (s.nonzero) s.betti = betti_numbers(f, m, K.nvars);
  return s;
}

template <class F>
DepthReport depth_report_impl(const F& f, const FieldSpec& spec, const MonomialIdeal& ideal,
                              const KoszulCaps& caps, bool fill_scm) {
  check_caps(ideal, caps);
  DepthReport report;
  report.n = ideal.universe()->size();
  report.q = ideal.generator_count();
  report.field = spec;
  report.quotient_dim = dim_quotient(ideal);
  if (ideal.is_zero()) {
    // Koszul complex on no generators: H_0 = R.
    report.box_top = Multidegree::zeros(report.n);
    DepthRow row;
    row.i = 0;
    row.nonzero = true;
    row.depth = report.n;
    row.generators = 1;
    row.dim_in_box = 1;
    row.sliding_bound = report.n;
    row.sliding_pass = true;
    row.cm_pass = report.quotient_dim == report.n;
    report.per_i = {row};
    report.sliding_depth = true;
    if (fill_scm) report.strongly_cm = row.cm_pass;
    return report;
  }

  auto K = KoszulDescriptor::of(ideal);
  Multidegree sigma = sigma_of(ideal);

  using Table = std::vector<HomologySnapshot>;
  auto compute = [&](const Multidegree& top) {
    Table t;
    t.reserve(static_cast<std::size_t>(report.q + 1));
    for (int i = 0; i <= report.q; ++i) t.push_back(snapshot_homology(f, K, i, top, caps.max_box));
    return t;
  };
  auto same = [](const Table& a, const Table& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!same_snapshot(a[i], b[i])) return false;
    return true;
  };
  auto render = [](const Table& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.size(); ++i) {
      out << " H_" << i << (t[i].nonzero ? "" : " = 0") << "\n";
      if (t[i].nonzero) out << render_betti(t[i].betti);
    }
    return out.str();
  };

  auto [table, rounds] = stabilized<Table>(compute, same, render, sigma);
  report.stability_rounds = rounds;
  report.box_top = plus_ones(sigma, rounds - 1);

  report.sliding_depth = true;
  bool scm = true;
  for (int i = 0; i <= report.q; ++i) {
    const auto& snap = table[static_cast<std::size_t>(i)];
    DepthRow row;
    row.i = i;
    row.nonzero = snap.nonzero;
    row.dim_in_box = snap.dim_in_box;
    row.sliding_bound = report.n - report.q + i;
    if (snap.nonzero) {
      int pd = 0;
      for (const auto& e : snap.betti) {
        pd = std::max(pd, e.index);
        if (e.index == 0) row.generators += e.rank;
      }
      row.depth = report.n - pd;
      row.sliding_pass = *row.depth >= row.sliding_bound;
      row.cm_pass = *row.depth == report.quotient_dim;
    }
    report.sliding_depth = report.sliding_depth && row.sliding_pass;
    scm = scm && row.cm_pass;
    report.per_i.push_back(std::move(row));
  }
  if (fill_scm) report.strongly_cm = scm;
  return report;
}

DepthReport depth_report_dispatch(const MonomialIdeal& ideal, const FieldSpec& field,
                                  const KoszulCaps& caps, bool fill_scm) {
  if (ideal.is_unit()) throw DomainError("Koszul depth report of the unit ideal");
  if (field.kind == FieldSpec::Kind::rational) {
    RationalField f;
    return depth_report_impl(f, field, ideal, caps, fill_scm);
  }
  PrimeField f(field.p);
  return depth_report_impl(f, field, ideal, caps, fill_scm);
}

}  // namespace

DepthReport sliding_depth_check(const MonomialIdeal& ideal, const FieldSpec& field,
                                const KoszulCaps& caps) {
  return depth_report_dispatch(ideal, field, caps, /*fill_scm=*/false);
}

DepthReport strongly_cm_check(const MonomialIdeal& ideal, const FieldSpec& field,
                              const KoszulCaps& caps) {
  return depth_report_dispatch(ideal, field, caps, /*fill_scm=*/true);
}

namespace {

bool same_presentation(const MultigradedPresentation& a, const MultigradedPresentation& b) {
  if (a.generator_degrees != b.generator_degrees) return false;
  if (a.relations.size() != b.relations.size()) return false;
  for (std::size_t c = 0; c < a.relations.size(); ++c) {
    if (!(a.relations[c].degree == b.relations[c].degree)) return false;
    const auto& ea = a.relations[c].entries;
    const auto& eb = b.relations[c].entries;
    if (ea.size() != eb.size()) return false;
    for (std::size_t k = 0; k < ea.size(); ++k)
      if (ea[k].generator != eb[k].generator || ea[k].scalar != eb[k].scalar ||
          !(ea[k].monomial == eb[k].monomial))
        return false;
  }
  return true;
}

std::string render_presentation(const MultigradedPresentation& p) {
  std::ostringstream out;
  out << "  generators:";
  for (const auto& g : p.generator_degrees) out << " " << g.str();
  out << "\n  relations:";
  for (const auto& c : p.relations) out << " " << c.degree.str() << "[" << c.entries.size() << "]";
  out << "\n";
  return out.str();
}

template <class F>
MultigradedPresentation presentation_impl(const F& f, const FieldSpec& spec,
                                          const MonomialIdeal& ideal, int i,
                                          const KoszulCaps& caps) {
  check_caps(ideal, caps);
  auto K = KoszulDescriptor::of(ideal);
  int n = K.nvars;
  Multidegree sigma = sigma_of(ideal);

  auto compute = [&](const Multidegree& top) {
    auto box = DegreeBox::upto(top, caps.max_box);
    auto m = koszul_homology_module(f, K, i, box);
    MultigradedPresentation pres;
    pres.nvars = n;
    pres.field = spec;
    auto gens = minimal_generators(f, m);
    for (const auto& g : gens) pres.generator_degrees.push_back(g.degree);
    if (gens.empty()) return pres;
    auto phi = presentation_map(f, m, gens);
    auto ker = kernel_module(f, pres.generator_degrees, phi, box, n);
    auto relgens = minimal_generators(f, ker);
    for (const auto& rg : relgens) {
      PresentationColumn col;
      col.degree = rg.degree;
      // Embed the kernel-module representative into free-module coordinates.
      const auto& kdata = ker.data[static_cast<std::size_t>(rg.idx)];
      auto embedded = mat_vec(f, kdata.reps, rg.rep);
      auto act = active_generators(pres.generator_degrees, rg.degree);
      for (std::size_t p = 0; p < act.size(); ++p) {
        if (f.is_zero(embedded[p])) continue;
        PresentationEntry entry;
        entry.generator = act[p];
        if constexpr (std::is_same_v<F, RationalField>) {
          entry.scalar = embedded[p];
        } else {
          entry.scalar = Rational(embedded[p]);
        }
        entry.monomial = *rg.degree.minus(pres.generator_degrees[static_cast<std::size_t>(act[p])]);
        col.entries.push_back(std::move(entry));
      }
      pres.relations.push_back(std::move(col));
    }
    return pres;
  };

  auto [pres, rounds] = stabilized<MultigradedPresentation>(
      compute, same_presentation, render_presentation, sigma);
  (void)rounds;
  return pres;
}

}  // namespace

MultigradedPresentation koszul_homology_presentation(const MonomialIdeal& ideal, int i,
                                                     const FieldSpec& field, const KoszulCaps& caps) {
  if (ideal.is_unit()) throw DomainError("Koszul homology of the unit ideal");
  if (ideal.is_zero()) {
    // H_0 = R, higher homology vanishes.
    MultigradedPresentation pres;
    pres.nvars = ideal.universe()->size();
    pres.field = field;
    if (i == 0) pres.generator_degrees = {Multidegree::zeros(pres.nvars)};
    return pres;
  }
  if (field.kind == FieldSpec::Kind::rational) {
    RationalField f;
    return presentation_impl(f, field, ideal, i, caps);
  }
  PrimeField f(field.p);
  return presentation_impl(f, field, ideal, i, caps);
}

namespace {

Multidegree presentation_box_base(const MultigradedPresentation& m) {
  Multidegree top = Multidegree::zeros(m.nvars);
  auto grow = [&](const Multidegree& d) {
    for (int v = 0; v < m.nvars; ++v)
      top.exponents[static_cast<std::size_t>(v)] =
          std::max(top.at(v), d.at(v));
  };
  for (const auto& g : m.generator_degrees) grow(g);
  for (const auto& c : m.relations) grow(c.degree);
  return top;
}

template <class F>
std::vector<BettiEntry> tor_betti_impl(const F& f, const MultigradedPresentation& m,
                                       const KoszulCaps& caps) {
  Multidegree base = presentation_box_base(m);
  auto compute = [&](const Multidegree& top) {
    auto box = DegreeBox::upto(top, caps.max_box);
    auto module = coker_module(f, m, box);
    return betti_numbers(f, module, m.nvars);
  };
  auto same = [](const std::vector<BettiEntry>& a, const std::vector<BettiEntry>& b) { return a == b; };
  auto [entries, rounds] =
      stabilized<std::vector<BettiEntry>>(compute, same, render_betti, base);
  (void)rounds;
  return entries;
}

}  // namespace

std::vector<BettiEntry> tor_betti(const MultigradedPresentation& m, const KoszulCaps& caps) {
  if (m.generator_degrees.empty()) return {};
  if (m.field.kind == FieldSpec::Kind::rational) {
    RationalField f;
    return tor_betti_impl(f, m, caps);
  }
  PrimeField f(m.field.p);
  return tor_betti_impl(f, m, caps);
}

int projective_dimension(const MultigradedPresentation& m, const KoszulCaps& caps) {
  auto entries = tor_betti(m, caps);
  if (entries.empty()) throw DomainError("projective dimension of the zero module");
  int pd = 0;
  for (const auto& e : entries) pd = std::max(pd, e.index);
  return pd;
}

int depth_module(const MultigradedPresentation& m, const KoszulCaps& caps) {
  return m.nvars - projective_dimension(m, caps);
}

}  // namespace facetforest
