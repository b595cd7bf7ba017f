#pragma once
#include "weilzeta/cyclo.hpp"
#include "weilzeta/fqm.hpp"
#include "weilzeta/intmat.hpp"

#include <string>
#include <vector>

namespace wz {

struct Letter {
    enum Kind { S, Sinv, T, M } kind = S;
    IMat mat;  // b for T (symmetric), a for M (unimodular); n x n
};

struct GroupWord {
    int genus = 1;
    std::vector<Letter> letters;

    GroupWord() = default;
    explicit GroupWord(int n) : genus(n) {}
    GroupWord& S();
    GroupWord& Sinv();
    GroupWord& T(const IMat& b);
    GroupWord& T(long b);  // genus 1
    GroupWord& M(const IMat& a);
    GroupWord& append(const GroupWord& w);
    GroupWord inverse() const;
    // S -> S^{-1}, T(b) -> T(-b), m(a) -> m(a)
    GroupWord tilde() const;
    IMat matrix() const;
    std::string str() const;
};

// "S,Sinv,T,T(3),T(b=[[1,0],[0,0]]),m(a=[[0,1],[1,0]])"
GroupWord parse_word(int genus, const std::string& text);
GroupWord sl2_word(const Mat2& g);     // Euclid on the bottom row
GroupWord up_word(const GroupWord& w);  // genus-1 word -> word for gamma^up
GroupWord down_word(const GroupWord& w);
GroupWord U2_word(const IMat& a);  // U_2(a) = S_2 T_2(-a) S_2^{-1}
Mat2 mat2_of(const IMat& m);
IMat imat_of(const Mat2& m);

// Square matrix over Q(zeta_K) stored as integer numerator polynomials with a
// common positive denominator.
class WeilMatrix {
public:
    WeilMatrix() = default;
    WeilMatrix(int dim, int K);
    static WeilMatrix identity(int dim);
    static WeilMatrix from_entries(int dim, const std::vector<CycloNum>& entries);

    int dim() const { return dim_; }
    int conductor() const { return K_; }
    int genus = 1;

    CycloNum entry(int i, int j) const;
    bool entry_is_zero(int i, int j) const;
    std::vector<cd> embed() const;  // row-major complex values
    cd entry_cd(int i, int j) const;

    WeilMatrix operator*(const WeilMatrix& o) const;
    WeilMatrix scaled(const CycloNum& c) const;
    bool operator==(const WeilMatrix& o) const;
    bool operator!=(const WeilMatrix& o) const { return !(*this == o); }
    WeilMatrix conj() const;
    WeilMatrix transpose() const;
    WeilMatrix adjoint() const { return conj().transpose(); }
    WeilMatrix lifted(int K) const;
    bool is_identity() const;
    std::string str() const;

    // builder access: numerator polynomial of entry (i,j) at the current denominator
    long* raw(int i, int j) { return &num_[(static_cast<size_t>(i) * dim_ + j) * phi_]; }
    const long* raw(int i, int j) const { return &num_[(static_cast<size_t>(i) * dim_ + j) * phi_]; }
    long den() const { return den_; }
    void set_den(long d) { den_ = d; }
    int phi() const { return phi_; }
    void normalize();

    friend WeilMatrix kron(const WeilMatrix& a, const WeilMatrix& b);

private:
    int dim_ = 0, K_ = 1, phi_ = 1;
    long den_ = 1;
    std::vector<long> num_;
};

WeilMatrix kron(const WeilMatrix& a, const WeilMatrix& b);
WeilMatrix dual(const WeilMatrix& m);

WeilMatrix rho_generator(const FQM& D, int n, const Letter& g);
WeilMatrix rho_word(const FQM& D, const GroupWord& w);
WeilMatrix rho1_matrix(const FQM& D, const Mat2& g);
enum class Direction { Up, Down };
WeilMatrix rho2_embed(const FQM& D, const Mat2& g, Direction dir);
WeilMatrix rho2_U2_offdiag(const FQM& D, long d, bool inverse);
WeilMatrix conjugation_tilde(const FQM& D, const GroupWord& w);
// e_lambda -> e_{d lambda}
WeilMatrix scaling_map(const FQM& D, long d);

enum class Variant { Dprime, D };
WeilMatrix extended_action(const FQM& D, long d, const GroupWord& left, const GroupWord& right, Variant v);

// delta = gamma * diag(d^2, 1) * gamma' for an integer primitive matrix of determinant d^2
struct DoubleCosetFactor {
    Mat2 left, right;
    long d;
};
DoubleCosetFactor factor_double_coset(const Mat2& delta);
// rho^{-1}(delta) via the factorization, variant Dprime
WeilMatrix extended_inverse_rho(const FQM& D, const Mat2& delta);

// g_d / g as exact CycloNum (throws ZeroGaussSum if g = 0)
CycloNum gauss_ratio(const FQM& D, long d);

}  // namespace wz
