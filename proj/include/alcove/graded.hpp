#pragma once

#include <map>
#include <string>
#include <vector>

#include "alcove/matrix.hpp"

namespace alcove {

struct GradedComponent {
    int degree = 0;
    int dim = 0;
    std::vector<std::string> labels;  // optional, sized dim when present
};

// Finite-dimensional Z-graded vector space with distinct component degrees.
struct GradedSpace {
    std::vector<GradedComponent> components;

    int dim(int degree) const {
        for (const auto& c : components)
            if (c.degree == degree) return c.dim;
        return 0;
    }
    int total_dim() const {
        int n = 0;
        for (const auto& c : components) n += c.dim;
        return n;
    }
    void validate() const {
        for (size_t i = 0; i < components.size(); ++i) {
            require(components[i].dim >= 0, "GradedSpace: negative dimension");
            require(components[i].labels.empty() ||
                        int(components[i].labels.size()) == components[i].dim,
                    "GradedSpace: label count mismatch");
            for (size_t j = i + 1; j < components.size(); ++j)
                require(components[i].degree != components[j].degree,
                        "GradedSpace: duplicate degree");
        }
    }
};

// Degree-homogeneous map between graded spaces: one rational block per source
// degree, mapping degree d to degree d + degree_.
struct LinearMap {
    GradedSpace source, target;
    int degree = 0;
    std::map<int, Mat> blocks;  // keyed by source degree

    void validate() const {
        for (const auto& [d, m] : blocks) {
            require(m.cols() == source.dim(d), "LinearMap: block column mismatch");
            require(m.rows() == target.dim(d + degree), "LinearMap: block row mismatch");
        }
    }
    LinearMap compose(const LinearMap& inner) const {
        LinearMap r;
        r.source = inner.source;
        r.target = target;
        r.degree = degree + inner.degree;
        for (const auto& [d, m] : inner.blocks) {
            auto it = blocks.find(d + inner.degree);
            if (it != blocks.end()) r.blocks[d] = it->second * m;
        }
        return r;
    }
    bool is_zero() const {
        for (const auto& [d, m] : blocks)
            if (!m.is_zero()) return false;
        return true;
    }
};

}  // namespace alcove
