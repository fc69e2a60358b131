#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bogrape/domain.hpp"
#include "bogrape/graph.hpp"

namespace bogrape {

inline constexpr double kDefaultEnumerationBits = 24.0;

/// Streams every connected graph of the domain exactly once, in GraphKey
/// order. The visitor returns false to stop early. Throws DomainTooLarge
/// when search_space_bits(domain) exceeds max_bits.
void for_each_graph(const DomainSpec& domain, const std::function<bool(const AttributedGraph&)>& visit,
                    double max_bits = kDefaultEnumerationBits);

std::vector<AttributedGraph> enumerate_domain(const DomainSpec& domain,
                                              double max_bits = kDefaultEnumerationBits);

std::size_t count_domain(const DomainSpec& domain, double max_bits = kDefaultEnumerationBits);

/// Random feasible graph, deterministic in (domain, seed). Throws
/// SamplingExhausted after max_attempts rejected draws.
AttributedGraph sample_feasible(const DomainSpec& domain, std::uint64_t seed, int max_attempts = 200000);

}  // namespace bogrape
