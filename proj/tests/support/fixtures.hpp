#pragma once

#include <string>
#include <vector>

#include "jumploci/algebra/polyparse.hpp"
#include "jumploci/sheafkit/families.hpp"

namespace fixtures {

using namespace jumploci;

template <class K>
algebra::HomPoly<K> P(const std::string& s) {
    return algebra::parse_hompoly<K>(s, algebra::Vars::X);
}

// f with columns (x0, x1, x2, 0) and (0, x0, x1, x2).
template <class K>
sheafkit::BundleFamily<K> e02() {
    algebra::PolyMatrix<K> f(algebra::Vars::X, {0, 0, 0, 0}, {-1, -1});
    const char* c0[] = {"x0", "x1", "x2", "0"};
    const char* c1[] = {"0", "x0", "x1", "x2"};
    for (int i = 0; i < 4; ++i) {
        f.set(i, 0, algebra::parse_hompoly<K>(c0[i], algebra::Vars::X, 1));
        f.set(i, 1, algebra::parse_hompoly<K>(c1[i], algebra::Vars::X, 1));
    }
    return sheafkit::make_type02(f);
}

template <class K>
sheafkit::BundleFamily<K> e03() {
    return sheafkit::make_type03_general<K>({P<K>("x0^2"), P<K>("x1^2"), P<K>("x2^2")});
}

// l = x2, psi = (x1 q, -x0 q, c) with q = x0 x1 + x2^2, c = x0^3 + x1^3 + x2^3.
template <class K>
sheafkit::BundleFamily<K> e03ng() {
    auto q = P<K>("x0*x1 + x2^2");
    auto c = P<K>("x0^3 + x1^3 + x2^3");
    return sheafkit::make_type03_nongeneral<K>(P<K>("x2"), {P<K>("x1") * q, -(P<K>("x0") * q), c});
}

template <class K>
sheafkit::BundleFamily<K> em12() {
    return sheafkit::make_m12<K>(P<K>("x2"), {P<K>("x0^2"), P<K>("x1^2")});
}

} // namespace fixtures
