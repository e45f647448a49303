// Walk through the minor expansion of det(A+B) for one small pair: every
// signed product of complementary minors is printed, then the reassembled
// total is checked against the determinant computed directly.

#include <iostream>
#include <string>

#include "nss/detsum.hpp"

using namespace nss;

namespace {

std::string set_str(const IndexSet& s) {
    std::string out = "{";
    bool first = true;
    for (int m : s.members()) {
        if (!first) out += ",";
        out += std::to_string(m);
        first = false;
    }
    return out + "}";
}

}  // namespace

int main() {
    RationalField field;
    Matrix<Rational> a(2, 2, field), b(2, 2, field);
    a.at(0, 0) = Rational(2);  a.at(0, 1) = Rational(-1);
    a.at(1, 0) = Rational(1);  a.at(1, 1) = Rational(3);
    b.at(0, 0) = Rational(1, 2);  b.at(0, 1) = Rational(0);
    b.at(1, 0) = Rational(-3);    b.at(1, 1) = Rational(5);

    std::cout << "A = [2 -1; 1 3],  B = [1/2 0; -3 5]\n\n";
    SumExpansion<Rational> e = expand_det_sum(a, b);
    std::cout << "det(A+B) as " << e.terms.size() << " signed products of complementary minors:\n";
    for (const MinorTerm<Rational>& t : e.terms) {
        std::cout << "  I=" << set_str(t.i) << " J=" << set_str(t.j)
                  << "  sign=" << (t.parity ? "-" : "+")
                  << "  det A[IxJ]=" << t.minor_a.str()
                  << "  det B[I'xJ']=" << t.minor_b.str()
                  << "  term=" << t.signed_product.str() << "\n";
    }
    Rational direct = det(a + b);
    std::cout << "\nexpansion total: " << e.total.str() << "\n";
    std::cout << "direct det(A+B): " << direct.str() << "\n";
    if (!(e.total == direct)) {
        std::cout << "MISMATCH\n";
        return 1;
    }
    std::cout << "exact match\n";
    return 0;
}
