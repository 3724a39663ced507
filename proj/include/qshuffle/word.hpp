#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qshuffle {

// A basis monomial e_{i1}...e_{ik} of the free algebra, as its letter
// sequence. Generators are 1-based. Ordering is length-then-lexicographic,
// which restricts to plain lexicographic order on words of equal degree.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    // The fine grading: the multiset of letters.
    std::multiset<int> degree() const {
        return std::multiset<int>(letters.begin(), letters.end());
    }

    bool multilinear() const {
        std::set<int> s(letters.begin(), letters.end());
        return s.size() == letters.size();
    }

    Word reversed() const {
        Word w = *this;
        std::reverse(w.letters.begin(), w.letters.end());
        return w;
    }

    Word concat(const Word& o) const {
        Word w = *this;
        w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
        return w;
    }

    Word without_position(std::size_t p) const {
        Word w;
        w.letters.reserve(letters.size() - 1);
        for (std::size_t t = 0; t < letters.size(); ++t)
            if (t != p) w.letters.push_back(letters[t]);
        return w;
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend bool operator<(const Word& a, const Word& b) {
        if (a.letters.size() != b.letters.size())
            return a.letters.size() < b.letters.size();
        return a.letters < b.letters;
    }

    std::string str() const {
        if (letters.empty()) return "1";
        std::ostringstream os;
        for (std::size_t t = 0; t < letters.size(); ++t) {
            if (t) os << ".";
            os << "e" << letters[t];
        }
        return os.str();
    }
};

// All multilinear words of degree G, in lexicographic order.
inline std::vector<Word> multilinear_words(const std::vector<int>& degree) {
    std::vector<int> g = degree;
    std::sort(g.begin(), g.end());
    std::vector<Word> out;
    do {
        out.emplace_back(g);
    } while (std::next_permutation(g.begin(), g.end()));
    return out;
}

} // namespace qshuffle
