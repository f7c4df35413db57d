#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "torusctl/fourier/trig_field.hpp"

namespace torusctl {

// Sparse rational coordinate vector, sorted by column key.
using SparseVector = std::vector<std::pair<std::int64_t, Rational>>;

// Coordinates on the divergence-free space. Each canonical mode carries
// four columns: {cos, sin} x two free components of the coefficient; the
// component at the last nonzero index of l is implied by <a,l> = 0.
//
// Columns are ordered by decreasing |l|_inf, so in echelon form a row whose
// pivot belongs to a mode with |l|_inf <= M is supported in that window.
struct ModeCoordinates {
  static constexpr int kMaxComponent = 1024;

  static std::int64_t column(const WaveVector& l, Flavor f, int slot);
  struct Column {
    WaveVector wavevector;
    Flavor flavor;
    int slot;
  };
  static Column decode(std::int64_t key);

  static SparseVector encode(const FieldQ& u);
  static FieldQ decode_field(const SparseVector& v);
};

// Exact span of rational trigonometric fields, kept in row echelon form
// with unit pivots. canonicalize() brings it to reduced row echelon form,
// which is unique per subspace.
class RationalSubspace {
 public:
  RationalSubspace() = default;

  // Returns true if u was independent of the current span.
  bool insert(const FieldQ& u);
  bool insert(SparseVector v);

  bool contains(const FieldQ& u) const;
  bool contains_all(const RationalSubspace& other) const;

  std::size_t rank() const { return rows_.size(); }
  // dim of the intersection with span of modes |l|_inf <= M.
  std::size_t dim_within(int M) const;

  int max_wavenumber() const;
  long max_norm2() const;
  std::vector<WaveVector> support() const;

  void canonicalize();
  bool is_canonical() const { return canonical_; }

  // Basis rows as fields, ordered by pivot column.
  std::vector<FieldQ> basis() const;
  const std::vector<SparseVector>& rows() const { return rows_; }

  // Compares reduced echelon forms.
  friend bool operator==(RationalSubspace a, RationalSubspace b);

 private:
  SparseVector reduce(SparseVector v) const;

  std::vector<SparseVector> rows_;
  std::map<std::int64_t, std::size_t> pivots_;
  bool canonical_ = true;
};

}  // namespace torusctl
