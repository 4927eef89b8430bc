#pragma once

#include <string>
#include <vector>

#include "msnet/rng.hpp"
#include "msnet/temporal_graph.hpp"

namespace msnet::test {

inline NodeRegistry make_registry(int n, const std::string& prefix = "svc") {
    NodeRegistry registry;
    for (int i = 0; i < n; ++i) registry.add(prefix + "-" + std::to_string(i));
    return registry;
}

inline ContactStream make_stream(int n, std::vector<Contact> contacts) {
    return ContactStream::build(make_registry(n), std::move(contacts));
}

// Random stream without self-loops; duplicate timestamps allowed.
inline ContactStream random_stream(Rng& rng, int n_nodes, int n_contacts, Timestamp t_range,
                                   bool unit_weights = true) {
    std::vector<Contact> contacts;
    contacts.reserve(static_cast<std::size_t>(n_contacts));
    for (int i = 0; i < n_contacts; ++i) {
        Contact c;
        c.src = rng.next_int(n_nodes);
        c.dst = rng.next_int(n_nodes - 1);
        if (c.dst >= c.src) ++c.dst;
        c.t = static_cast<Timestamp>(rng.next_below(static_cast<std::uint64_t>(t_range)));
        c.weight = unit_weights ? 1.0 : 0.5 + rng.next_double() * 2.0;
        contacts.push_back(c);
    }
    return make_stream(n_nodes, std::move(contacts));
}

// Directed ER layer; never writes the diagonal.
inline Matrix random_layer(Rng& rng, int n, double p, double weight = 1.0) {
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng.bernoulli(p)) a(i, j) = weight;
    return a;
}

}  // namespace msnet::test
