#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "specialprimes/poly.hpp"

namespace sprimes {

// Element of R^alpha.
using FreeVector = std::vector<Poly>;

FreeVector zero_vector(const RingPtr& ring, std::size_t rank);
FreeVector unit_vector(const RingPtr& ring, std::size_t rank, std::size_t i);
bool is_zero_vector(const FreeVector& v);
FreeVector scale_vector(const FreeVector& v, const Poly& f);
FreeVector add_vectors(const FreeVector& a, const FreeVector& b);
FreeVector frobenius_vector(const FreeVector& v, unsigned e);
std::string vector_to_string(const FreeVector& v);

// Finitely generated submodule of R^rank with a lazily computed reduced
// Groebner basis in a position-over-term order (component 0 is the most
// significant). Rank one submodules are ideals.
class Submodule {
 public:
  Submodule() = default;
  Submodule(RingPtr ring, std::size_t rank, std::vector<FreeVector> gens);

  static Submodule zero(RingPtr ring, std::size_t rank);
  static Submodule full(RingPtr ring, std::size_t rank);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<FreeVector>& generators() const { return gens_; }

  // Reduced, monic, sorted by decreasing leading term. Computed once.
  const std::vector<FreeVector>& gb() const;

  bool is_zero() const;
  // True when the submodule is all of R^rank (the unit ideal for rank one).
  bool is_full() const;

  FreeVector normal_form(const FreeVector& v) const;
  bool contains(const FreeVector& v) const;
  bool contains(const Submodule& o) const;

  Submodule operator+(const Submodule& o) const;
  // Equality of reduced Groebner bases.
  bool operator==(const Submodule& o) const;
  bool operator!=(const Submodule& o) const { return !(*this == o); }

  // Same submodule over another ring with the same variables (up to var_map).
  Submodule mapped(const RingPtr& target, const std::vector<std::size_t>& var_map) const;

  // "(g1, g2)" for ideals and "<(a, b), (c, d)>" for modules, using the
  // reduced Groebner basis. Zero prints as "(0)".
  std::string to_string() const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<FreeVector> gb;
  };

  RingPtr ring_;
  std::size_t rank_ = 0;
  std::vector<FreeVector> gens_;
  std::shared_ptr<Cache> cache_;
};

using Ideal = Submodule;

Ideal make_ideal(const RingPtr& ring, std::vector<Poly> gens);
Ideal unit_ideal(const RingPtr& ring);
Ideal zero_ideal(const RingPtr& ring);
// Reduced Groebner basis of an ideal, as polynomials.
std::vector<Poly> ideal_basis(const Ideal& I);
bool ideal_contains(const Ideal& I, const Poly& f);
Poly ideal_normal_form(const Ideal& I, const Poly& f);
// I * R^rank.
Submodule extend_ideal(const Ideal& I, std::size_t rank);

FreeVector normal_form(const FreeVector& v, const Submodule& G);
Submodule buchberger(const RingPtr& ring, std::size_t rank, const std::vector<FreeVector>& gens);
bool submodule_equal(const Submodule& a, const Submodule& b);

Submodule intersect(const Submodule& a, const Submodule& b);
// (V : f) = {w | f w in V}.
Submodule quotient(const Submodule& V, const Poly& f);
// (V : J) = {w | J w in V}; J = 0 gives R^rank.
Submodule quotient(const Submodule& V, const Ideal& J);
// (V :_R W) = {r | r W in V}.
Ideal module_quotient(const Submodule& V, const Submodule& W);
// Annihilator of R^rank / V.
Ideal annihilator(const Submodule& V);
// (V : a^infinity).
Submodule saturate(const Submodule& V, const Poly& a);

// dim R/I. Throws MathError on the unit ideal.
std::size_t krull_dimension(const Ideal& I);
// A maximal independent set of variables modulo the leading-term ideal,
// of size krull_dimension(I). Deterministic.
std::vector<std::size_t> independent_set(const Ideal& I);

// Elements of the submodule generated by gens (vectors of length k + m) whose
// first k components vanish, projected to the last m components.
Submodule eliminate_components(const RingPtr& ring, std::size_t total_rank,
                               const std::vector<FreeVector>& gens, std::size_t k);

// Coefficients r with v = sum r_i gens[i], or nullopt if v is not in the span.
std::optional<std::vector<Poly>> lift(const FreeVector& v, const std::vector<FreeVector>& gens);

// Counts Groebner computations on the current thread while alive; throws
// ResourceError once more than cap computations have been started.
class GbBudget {
 public:
  explicit GbBudget(std::size_t cap);
  ~GbBudget();
  GbBudget(const GbBudget&) = delete;
  GbBudget& operator=(const GbBudget&) = delete;

  std::size_t used() const;

 private:
  GbBudget* prev_;
  std::size_t cap_;
  std::size_t used_ = 0;
  friend void charge_gb_budget();
};

void charge_gb_budget();

}  // namespace sprimes
