#pragma once
#include "weilzeta/cyclo.hpp"
#include "weilzeta/intmat.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wz {

struct EvenLattice {
    ZMat gram;
    int rank() const { return static_cast<int>(gram.size()); }
    // throws DegenerateLattice, OddRank, OddDiagonal
    void validate() const;
};

EvenLattice read_gram_file(const std::string& path);
EvenLattice parse_gram(const std::string& text);
EvenLattice lattice_A2();
EvenLattice lattice_E8();
EvenLattice lattice_diag22();
EvenLattice lattice_A2A2();
EvenLattice orthogonal_sum(const EvenLattice& a, const EvenLattice& b);

constexpr long kDefaultEnumerationCap = 10000;

// Discriminant form (L'/L, q). Elements are residue tuples r with 0 <= r_i < d_i,
// indexed in lexicographic order (first coordinate most significant).
class FiniteQuadraticModule {
public:
    FiniteQuadraticModule() = default;
    FiniteQuadraticModule(std::vector<long> divisors, std::vector<std::vector<mpq_class>> q_matrix,
                          int signature_mod_8, int lattice_rank, mpz_class gram_det,
                          long cap = kDefaultEnumerationCap);

    const std::vector<long>& elementary_divisors() const { return divisors_; }
    // bilinear Gram of the chosen generators; q(sum r_i x_i) = r^T B r / 2
    const std::vector<std::vector<mpq_class>>& q_matrix() const { return B_; }
    long order() const { return order_; }
    long level() const { return level_; }
    int signature_mod_8() const { return sig8_; }
    int lattice_rank() const { return rank_; }
    const mpz_class& gram_det() const { return det_; }
    long cap() const { return cap_; }
    int num_generators() const { return static_cast<int>(divisors_.size()); }

    void require_enumerable() const;
    std::vector<long> element(long idx) const;
    long index_of(const std::vector<long>& r) const;
    long add(long x, long y) const;
    long neg(long x) const;
    long scale(long x, long d) const;
    // N*q(x) mod N and N*(x,y) mod N with N the level
    long qN(long x) const;
    long bN(long x, long y) const;
    mpq_class q(long x) const {
        mpq_class r(qN(x), level_);
        r.canonicalize();
        return r;
    }

    std::string describe() const;

private:
    std::vector<long> divisors_;
    std::vector<std::vector<mpq_class>> B_;
    long order_ = 1, level_ = 1, cap_ = kDefaultEnumerationCap;
    int sig8_ = 0, rank_ = 0;
    mpz_class det_ = 1;
    std::vector<std::vector<long>> BN_;  // level * B mod level (off-diagonal), diagonal holds level*q(x_i)
    std::vector<long> qtab_;             // qN per element, filled when enumerable
};

using FQM = FiniteQuadraticModule;

FQM discriminant_form(const EvenLattice& L, long cap = kDefaultEnumerationCap);
// b+ - b- of the Gram matrix via exact symmetric elimination
int lattice_signature(const ZMat& gram);
CycloNum gauss_sum(const FQM& D, long d);
bool is_anisotropic(const FQM& D);
FQM p_component(const FQM& D, long p);
bool milgram_holds(const FQM& D);

}  // namespace wz
