#include "parham/spectra.hpp"

#include <map>

namespace parham {

std::uint64_t Blocking::full_dim() const {
    std::uint64_t d = 1;
    for (int i = 0; i < num_sites; ++i) d *= local_dim;
    return d;
}

std::shared_ptr<const Blocking> make_blocking(int n_sites, int local_dim, bool blocked) {
    auto b = std::make_shared<Blocking>();
    b->num_sites = n_sites;
    b->local_dim = local_dim;
    b->blocked = blocked;

    std::uint64_t dim = 1;
    for (int i = 0; i < n_sites; ++i) {
        dim *= local_dim;
        if (dim > (std::uint64_t(1) << 28))
            throw CapacityError("blocking: Hilbert dimension too large");
    }

    b->config_block.assign(dim, -1);
    b->config_offset.assign(dim, -1);

    if (!blocked) {
        SectorBasis s;
        s.twice_sz = 0;
        s.configs.resize(dim);
        for (std::uint64_t c = 0; c < dim; ++c) {
            s.configs[c] = static_cast<std::uint32_t>(c);
            b->config_block[c] = 0;
            b->config_offset[c] = static_cast<std::int32_t>(c);
        }
        b->sectors.push_back(std::move(s));
        return b;
    }

    // digit i of a code carries twice-S^z = (d-1) - 2i  (descending S^z)
    std::map<int, std::vector<std::uint32_t>> by_mag;
    for (std::uint64_t c = 0; c < dim; ++c) {
        int twice_sz = 0;
        std::uint64_t rest = c;
        for (int j = 0; j < n_sites; ++j) {
            const int digit = static_cast<int>(rest % local_dim);
            twice_sz += (local_dim - 1) - 2 * digit;
            rest /= local_dim;
        }
        by_mag[twice_sz].push_back(static_cast<std::uint32_t>(c));
    }
    for (auto& [mag, configs] : by_mag) {
        SectorBasis s;
        s.twice_sz = mag;
        s.configs = std::move(configs);
        const int block = b->num_blocks();
        for (std::size_t i = 0; i < s.configs.size(); ++i) {
            b->config_block[s.configs[i]] = block;
            b->config_offset[s.configs[i]] = static_cast<std::int32_t>(i);
        }
        b->sectors.push_back(std::move(s));
    }
    return b;
}

}  // namespace parham
