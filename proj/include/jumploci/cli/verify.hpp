#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "jumploci/cli/report.hpp"
#include "jumploci/loci/seeding.hpp"

namespace jumploci::cli {

// Splitting types over a sample, in P^1 units.
struct Histogram {
    std::map<std::vector<int>, std::size_t> counts;
    std::size_t total = 0;

    void add(const std::vector<int>& parts) {
        ++counts[parts];
        ++total;
    }
    // Most frequent type; ties go to the lexicographically smallest.
    std::vector<int> modal() const {
        std::vector<int> best;
        std::size_t n = 0;
        for (const auto& [k, v] : counts)
            if (v > n) {
                best = k;
                n = v;
            }
        return best;
    }
    json to_json() const {
        json c = json::array();
        for (const auto& [k, v] : counts) c.push_back(json{{"parts", k}, {"count", v}});
        return json{{"total", total}, {"counts", c}, {"modal", modal()}};
    }
};

template <algebra::ExactField K>
Histogram conic_histogram(const sheafkit::BundleFamily<K>& fam, std::uint64_t seed, std::size_t n) {
    auto parts = loci::parallel_map<std::vector<int>>(n, [&](std::size_t i) {
        std::mt19937_64 rng(loci::task_seed(seed, "sample/conic", i));
        auto C = sheafkit::random_smooth_conic<K>(rng);
        return cohom::splitting_of(sheafkit::pullback(fam.bundle, *C.param())).parts;
    });
    Histogram h;
    for (const auto& p : parts) h.add(p);
    return h;
}

template <algebra::ExactField K>
Histogram line_histogram(const sheafkit::BundleFamily<K>& fam, std::uint64_t seed, std::size_t n) {
    auto parts = loci::parallel_map<std::vector<int>>(n, [&](std::size_t i) {
        std::mt19937_64 rng(loci::task_seed(seed, "sample/line", i));
        auto l = sheafkit::random_nonzero_vec3<K>(rng);
        return cohom::splitting_of(sheafkit::pullback(fam.bundle, sheafkit::line_param(l))).parts;
    });
    Histogram h;
    for (const auto& p : parts) h.add(p);
    return h;
}

// Every applicable property check for the family; failures are data. Unstable input throws ComputationError.
json verify_suite(const sheafkit::BundleFamily<algebra::Fp>& fam, std::uint64_t seed, std::size_t samples);

} // namespace jumploci::cli
