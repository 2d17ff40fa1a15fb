#include "qhmod/exact.hpp"

namespace qhmod {

std::string rational_str(const Rational& r) { return r.get_str(); }

std::string ExactComplex::str() const {
    if (im == 0) return rational_str(re);
    std::string s = rational_str(re);
    s += (im > 0) ? "+" : "-";
    Rational a = abs(im);
    if (a != 1) {
        s += rational_str(a);
        s += "*";
    }
    s += "i";
    return s;
}

} // namespace qhmod
