#include "pairinglab/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pairinglab/error.hpp"

namespace pairinglab {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint32_t lo32(std::uint64_t x) noexcept { return static_cast<std::uint32_t>(x); }
std::uint32_t hi32(std::uint64_t x) noexcept { return static_cast<std::uint32_t>(x >> 32); }

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
    ctr = {hi32(p1) ^ ctr[1] ^ key[0], lo32(p1), hi32(p0) ^ ctr[3] ^ key[1], lo32(p0)};
  }
  return ctr;
}

Rng::result_type Rng::operator()() noexcept {
  if (used_ == 4) {
    buffer_ = philox4x32_10({lo32(block_), hi32(block_), lo32(stream_), hi32(stream_)}, {lo32(seed_), hi32(seed_)});
    ++block_;
    used_ = 0;
  }
  return buffer_[used_++];
}

double Rng::uniform() noexcept {
  const std::uint64_t hi = (*this)();
  const std::uint64_t lo = (*this)();
  return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

double Rng::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_normal() noexcept {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) * std::numbers::sqrt2 * 0.5;
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = (std::uint64_t{(*this)()} << 32) | (*this)();
    if (x < limit) return x % n;
  }
}

Rng Rng::split(std::uint64_t id) const noexcept {
  return Rng(seed_, splitmix64(stream_ ^ splitmix64(id)));
}

std::vector<cplx> haar_random_pure(std::size_t d, Rng& rng) {
  if (d == 0) throw Error(Errc::OutOfRange, "dimension must be positive");
  std::vector<cplx> v(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& z : v) {
      z = rng.complex_normal();
      norm += std::norm(z);
    }
  } while (norm == 0.0);
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& z : v) z *= inv;
  return v;
}

DensityMatrix ginibre_density(std::size_t d, std::size_t rank, Rng& rng) {
  if (rank < 1 || rank > d) {
    throw Error(Errc::InvalidRank, "rank " + std::to_string(rank) + " outside [1, " + std::to_string(d) + "]");
  }
  ComplexMatrix g(d, rank);
  for (auto& z : g.entries()) z = rng.complex_normal();
  ComplexMatrix ggh = g * g.adjoint();
  ggh *= 1.0 / ggh.trace().real();
  return DensityMatrix(std::move(ggh));
}

std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  if (total == 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
    return w;
  }
  for (auto& x : w) x /= total;
  return w;
}

ComplexMatrix random_monomial_unitary(std::size_t d, Rng& rng) {
  if (d == 0) throw Error(Errc::OutOfRange, "dimension must be positive");
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  for (std::size_t i = d; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  ComplexMatrix u(d, d);
  for (std::size_t r = 0; r < d; ++r) u(r, perm[r]) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  return u;
}

std::size_t pairing_number_upper_bound(std::size_t d_a, std::size_t d_b) {
  const std::size_t cells = d_a * d_b;
  const std::size_t degree = std::min(d_a, d_b) - 1;
  std::size_t best = 0;
  for (std::size_t n = 0; n <= cells; ++n) {
    std::size_t m = std::min(n * (n - (n > 0 ? 1 : 0)) / 2, n * degree / 2);
    m = std::min(m, (cells - n) / 2);
    best = std::max(best, m);
  }
  if (d_a == d_b) best = std::min(best, d_a * (d_a - 1) / 2);
  return best;
}

namespace {

// Cell bookkeeping for the pairing generator. A diagonal cell carries weight
// in ρ; a transposition cell must stay empty on the diagonal of ρ because the
// partial transpose moves a coherence there.
enum class Cell { Free, Diagonal, Transposed };

struct Piece {
  std::vector<std::size_t> a_labels;
  std::vector<std::size_t> b_labels;
};

class PairingLayout {
 public:
  PairingLayout(std::size_t d_a, std::size_t d_b) : d_a_(d_a), d_b_(d_b), cells_(d_a * d_b, Cell::Free) {}

  Cell at(std::size_t j, std::size_t k) const { return cells_[j * d_b_ + k]; }

  // MC clique on labels (a[r], b[r]); all a distinct, all b distinct.
  bool clique_fits(const Piece& p) const {
    const std::size_t s = p.a_labels.size();
    for (std::size_t r = 0; r < s; ++r) {
      if (at(p.a_labels[r], p.b_labels[r]) != Cell::Free) return false;
      for (std::size_t t = 0; t < s; ++t)
        if (t != r && at(p.a_labels[r], p.b_labels[t]) != Cell::Free) return false;
    }
    return true;
  }

  // Single coherence between an existing diagonal cell and another cell.
  bool edge_fits(std::size_t j, std::size_t k, std::size_t jp, std::size_t kp) const {
    if (j == jp || k == kp) return false;
    if (at(j, k) == Cell::Transposed || at(jp, kp) == Cell::Transposed) return false;
    return at(j, kp) == Cell::Free && at(jp, k) == Cell::Free;
  }

  void place(const Piece& p) {
    const std::size_t s = p.a_labels.size();
    for (std::size_t r = 0; r < s; ++r) {
      cells_[p.a_labels[r] * d_b_ + p.b_labels[r]] = Cell::Diagonal;
      for (std::size_t t = 0; t < s; ++t)
        if (t != r) cells_[p.a_labels[r] * d_b_ + p.b_labels[t]] = Cell::Transposed;
    }
  }

  std::vector<std::size_t> cells_with(Cell state) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i] == state) out.push_back(i);
    return out;
  }

  std::size_t d_a() const { return d_a_; }
  std::size_t d_b() const { return d_b_; }

 private:
  std::size_t d_a_, d_b_;
  std::vector<Cell> cells_;
};

std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
  idx.resize(k);
  return idx;
}

bool try_place_clique(PairingLayout& layout, std::size_t size, Rng& rng, std::vector<Piece>& pieces) {
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Piece p{random_subset(layout.d_a(), size, rng), random_subset(layout.d_b(), size, rng)};
    if (layout.clique_fits(p)) {
      layout.place(p);
      pieces.push_back(std::move(p));
      return true;
    }
  }
  return false;
}

bool try_attach_edge(PairingLayout& layout, Rng& rng, std::vector<Piece>& pieces) {
  const auto diagonal = layout.cells_with(Cell::Diagonal);
  std::vector<Piece> options;
  for (std::size_t cell : diagonal) {
    const std::size_t j = cell / layout.d_b(), k = cell % layout.d_b();
    for (std::size_t jp = 0; jp < layout.d_a(); ++jp)
      for (std::size_t kp = 0; kp < layout.d_b(); ++kp)
        if (layout.edge_fits(j, k, jp, kp)) options.push_back(Piece{{j, jp}, {k, kp}});
  }
  if (options.empty()) return false;
  const Piece& p = options[rng.below(options.size())];
  layout.place(p);
  pieces.push_back(p);
  return true;
}

std::size_t largest_clique(std::size_t pairs, std::size_t cap) {
  std::size_t s = 2;
  while (s + 1 <= cap && (s + 1) * s / 2 <= pairs) ++s;
  return s;
}

}  // namespace

BipartiteState random_canonical_pairing(std::size_t d_a, std::size_t d_b, std::size_t n_pairs, Rng& rng) {
  if (d_a == 0 || d_b == 0) throw Error(Errc::Infeasible, "dimensions must be positive");
  if (n_pairs > pairing_number_upper_bound(d_a, d_b)) {
    throw Error(Errc::Infeasible, std::to_string(n_pairs) + " pairs exceed the pairing-number bound for " +
                                      std::to_string(d_a) + "x" + std::to_string(d_b));
  }
  constexpr int kRestarts = 256;
  for (int restart = 0; restart < kRestarts; ++restart) {
    PairingLayout layout(d_a, d_b);
    std::vector<Piece> pieces;
    std::size_t remaining = n_pairs;
    bool stuck = false;
    while (remaining > 0 && !stuck) {
      std::size_t size = largest_clique(remaining, std::min(d_a, d_b));
      bool placed = false;
      for (; size >= 2 && !placed; --size) {
        if (try_place_clique(layout, size, rng, pieces)) {
          remaining -= size * (size - 1) / 2;
          placed = true;
        }
      }
      if (!placed && !layout.cells_with(Cell::Diagonal).empty() && try_attach_edge(layout, rng, pieces)) {
        remaining -= 1;
        placed = true;
      }
      stuck = !placed;
    }
    if (stuck) continue;

    // Extra diagonal weight on a random subset of the free cells; at least
    // one cell overall so the n_pairs = 0 case is a proper state.
    std::vector<std::size_t> extras;
    for (std::size_t cell : layout.cells_with(Cell::Free))
      if (rng.uniform() < 0.5) extras.push_back(cell);
    if (pieces.empty() && extras.empty()) extras.push_back(rng.below(d_a * d_b));

    const auto weights = random_simplex(pieces.size() + extras.size(), rng);
    ComplexMatrix rho(d_a * d_b, d_a * d_b);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const Piece& p = pieces[i];
      const std::size_t s = p.a_labels.size();
      const DensityMatrix c = ginibre_density(s, 1 + rng.below(s), rng);
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t t = 0; t < s; ++t)
          rho(p.a_labels[r] * d_b + p.b_labels[r], p.a_labels[t] * d_b + p.b_labels[t]) += weights[i] * c(r, t);
    }
    for (std::size_t e = 0; e < extras.size(); ++e) rho(extras[e], extras[e]) += weights[pieces.size() + e];
    return BipartiteState(DensityMatrix(std::move(rho)), d_a, d_b);
  }
  throw Error(Errc::Infeasible, "no placement found for " + std::to_string(n_pairs) + " pairs in " +
                                    std::to_string(d_a) + "x" + std::to_string(d_b));
}

}  // namespace pairinglab
