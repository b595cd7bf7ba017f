#pragma once
#include "weilzeta/intmat.hpp"
#include "weilzeta/weil.hpp"

#include <string>
#include <vector>

namespace wz {

enum class CosetKind { Genus1Borel, Genus2Klingen0, HeckeRight, Gamma1d, GammaAntiDiag, Garrett };

std::string kind_name(CosetKind k);

// A representative: integer matrix `mat` divided by `denom`, with a word in
// the generators whenever the matrix is integral and symplectic.
struct CosetRep {
    IMat mat;
    long denom = 1;
    GroupWord word;
    bool has_word = false;
};

struct CosetList {
    CosetKind kind;
    long truncation = 0;
    std::vector<CosetRep> reps;
    size_t size() const { return reps.size(); }
};

// Gamma_{1,0}\Gamma_1: one rep per coprime (c,d) with max(|c|,|d|) <= height, c > 0 or (c,d) = (0,1).
CosetList genus1_cosets(long height);
// Gamma_{2,0}\Gamma_2: classes of coprime symmetric pairs (C,D) having a member with all
// entries bounded by height, canonicalised by row Hermite form of (C|D).
CosetList genus2_cosets(long height);
// Gamma_1\Gamma_1 D' Gamma_1 (Dprime) or the same matrices divided by d (D).
CosetList hecke_right_cosets(long d, Variant v);
// Gamma_1(d)\Gamma_1 with Gamma_1(d) = {c = 0 mod d^2}.
CosetList gamma1d_cosets(long d);
// Gamma_1(antidiag(1/d, d))\Gamma_1 with that subgroup = {b = 0 mod d^2}.
CosetList gamma_antidiag_cosets(long d);
Mat2 involution_ell(const Mat2& g);
// ell composed with inversion: carries right cosets of Gamma_1(d) to right cosets of the antidiagonal group.
Mat2 ell_right(const Mat2& g);
CosetList garrett_reps(long d, long g_height);

bool in_gamma_n0(const IMat& g);  // bottom-left block zero
bool in_gamma1d(const Mat2& g, long d);
bool in_gamma_antidiag(const Mat2& g, long d);
// pairwise inequivalence under the defining subgroup; returns the number of equivalent pairs
long count_equivalent_pairs(const CosetList& L, long d = 1);

// Constructive reduction: a word w with g * w in Gamma_{2,0}; rep word is w^{-1}.
GroupWord genus2_reducing_word(const IMat& C, const IMat& D);
// Row Hermite form of (C|D), used as the canonical class key.
IMat klingen_key(const IMat& g);

// Embed a 2x2 matrix of SL_2 in the top-left (up) or bottom-right (down) copy.
IMat embed_up(const Mat2& g);
IMat embed_down(const Mat2& g);

}  // namespace wz
