#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "klr/qarith.hpp"

namespace klr {

// A word in simple-root labels (also used for reduced words in the Weyl
// group, where letters index simple reflections).
using Word = std::vector<int>;

// A root written in coordinates over the simple roots.
using Root = std::vector<int>;

// Symmetrized Cartan datum: bil[i][j] = i.j with even positive diagonal and
// nonpositive integers off the diagonal such that 2*i.j/i.i is an integer.
struct CartanData {
    std::vector<std::vector<int>> bil;

    int rank() const { return static_cast<int>(bil.size()); }
    int pair(int i, int j) const { return bil.at(i).at(j); }
    int d(int i) const { return bil.at(i).at(i); }       // squared length i.i
    int cartan(int i, int j) const;                      // a_ij = 2*i.j / i.i
    void validate() const;                               // throws std::domain_error
    bool is_positive_definite() const;

    // Named finite types with the fixed labelings used throughout:
    //   A_n      path 0-1-...-(n-1), all short
    //   B_n      0 short, 1..n-1 long, 0.1 = -2
    //   C_n      0 long, 1..n-1 short, 0.1 = -2
    //   D_n      path 0..n-3 with forks n-2, n-1 attached at n-3
    //   E_6..E_8 path 0..(n-2) with node n-1 attached at 2
    //   F_4      0,1 short, 2,3 long, double bond between 1 and 2
    //   G_2      0 short, 1 long
    static CartanData named(const std::string& type);
};

Root weight_of_word(const Word& w, int rank);
int height(const Root& a);

class RootSystem {
public:
    explicit RootSystem(CartanData cd);

    const CartanData& cartan() const { return cd_; }
    int rank() const { return cd_.rank(); }
    const std::vector<Root>& positive_roots() const { return positive_; }
    bool is_positive_root(const Root& v) const { return rootset_.count(v) > 0; }
    Root simple(int i) const;
    int pair(const Root& a, const Root& b) const; // bilinear form
    Root reflect(int i, Root v) const;            // simple reflection s_i

private:
    CartanData cd_;
    std::vector<Root> positive_;
    std::set<Root> rootset_;
};

// A total convex order on the positive roots, either read off a reduced word
// of the longest Weyl group element or built by the canonical key recursion
// that matches the published classification tables.
class ConvexOrder {
public:
    static ConvexOrder from_word(const RootSystem& rs, const Word& word);
    // Canonical order: keys compare words right to left with larger letters
    // meaning smaller roots; built inductively from two-root splittings.
    static ConvexOrder table_order(const RootSystem& rs);

    const RootSystem& system() const { return sys_; }
    const std::vector<Root>& roots() const { return order_; }
    int position(const Root& a) const; // throws when a is not a positive root
    bool less(const Root& a, const Root& b) const { return position(a) < position(b); }

    // The reduced word of the longest element inducing this order.
    Word to_word() const;
    // Throws std::domain_error naming the violated triple when not convex.
    void check_convexity() const;

    bool has_good_words() const { return !keys_.empty(); }
    // Dominant word of the root's cuspidal character (table orders only).
    Word good_word(const Root& a) const;
    std::optional<Root> root_of_good_word(const Word& w) const;

private:
    ConvexOrder(RootSystem s, std::vector<Root> o, std::map<Root, Word> keys);

    RootSystem sys_;
    std::vector<Root> order_;
    std::map<Root, int> pos_;
    std::map<Root, Word> keys_;
};

// A two-root splitting alpha = beta + gamma with beta < alpha < gamma.
struct RootPair {
    Root beta, gamma;
    friend bool operator==(const RootPair& a, const RootPair& b) {
        return a.beta == b.beta && a.gamma == b.gamma;
    }
};

// All straddling pairs, sorted by the position of gamma.
std::vector<RootPair> straddling_pairs(const ConvexOrder& co, const Root& alpha);
// Pairs minimal for: (beta, gamma) dominates (beta', gamma') when
// gamma <= gamma' and beta >= beta' in the order.
std::vector<RootPair> minimal_pairs(const ConvexOrder& co, const Root& alpha);
// The canonical choice: the straddling pair with gamma smallest.
RootPair chosen_minimal_pair(const ConvexOrder& co, const Root& alpha);

// Number of ways to write the weight as a nonnegative integer combination of
// positive roots.
Int kostant_partition_count(const RootSystem& rs, const Root& weight);

// Reduced-word machinery for the longest element.
Word longest_word(const RootSystem& rs); // lexicographically smallest reduced word
std::vector<Word> all_reduced_words_w0(const RootSystem& rs, std::size_t limit);
Word random_reduced_word_w0(const RootSystem& rs, std::mt19937_64& rng);

} // namespace klr
