#include "parham/stateio.hpp"

#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "state files are little-endian");

namespace parham {

namespace {

constexpr char kMagic[8] = {'P', 'A', 'R', 'H', 'A', 'M', 'B', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kKindState = 1;
constexpr std::uint32_t kKindDensity = 2;

template <typename T>
void put(std::ofstream& f, T v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& f) {
    T v;
    f.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!f) throw std::runtime_error("state file truncated");
    return v;
}

void write_header(std::ofstream& f, std::uint32_t kind, int local_dim, int n_sites,
                  const Blocking& bl) {
    f.write(kMagic, 8);
    put<std::uint32_t>(f, kVersion);
    put<std::uint32_t>(f, kind);
    put<std::uint32_t>(f, local_dim);
    put<std::uint32_t>(f, n_sites);
    put<std::uint32_t>(f, bl.num_blocks());
    for (const auto& s : bl.sectors) {
        put<std::int32_t>(f, s.twice_sz);
        put<std::uint64_t>(f, s.configs.size());
    }
}

struct Header {
    std::uint32_t kind, local_dim, n_sites;
    std::vector<std::pair<std::int32_t, std::uint64_t>> sectors;
};

Header read_header(std::ifstream& f, const std::string& path) {
    char magic[8];
    f.read(magic, 8);
    if (!f || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error(path + ": not a parham state file");
    if (get<std::uint32_t>(f) != kVersion)
        throw std::runtime_error(path + ": unsupported version");
    Header h;
    h.kind = get<std::uint32_t>(f);
    h.local_dim = get<std::uint32_t>(f);
    h.n_sites = get<std::uint32_t>(f);
    const std::uint32_t n_sec = get<std::uint32_t>(f);
    for (std::uint32_t i = 0; i < n_sec; ++i) {
        const auto sz = get<std::int32_t>(f);
        const auto dim = get<std::uint64_t>(f);
        h.sectors.emplace_back(sz, dim);
    }
    return h;
}

std::shared_ptr<const Blocking> match_blocking(const Header& h, const std::string& path) {
    for (bool blocked : {true, false}) {
        auto bl = make_blocking(h.n_sites, h.local_dim, blocked);
        if (static_cast<std::uint32_t>(bl->num_blocks()) != h.sectors.size()) continue;
        bool ok = true;
        for (int i = 0; i < bl->num_blocks(); ++i)
            if (bl->sectors[i].twice_sz != h.sectors[i].first ||
                bl->sectors[i].configs.size() != h.sectors[i].second)
                ok = false;
        if (ok) return bl;
    }
    throw std::runtime_error(path + ": sector table does not match the lattice");
}

}  // namespace

void save_state(const std::string& path, const Eigen::VectorXcd& full_state,
                int n_sites, int local_dim) {
    auto bl = make_blocking(n_sites, local_dim, true);
    if (bl->full_dim() != static_cast<std::uint64_t>(full_state.size()))
        throw std::invalid_argument("save_state: dimension mismatch");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_header(f, kKindState, local_dim, n_sites, *bl);
    for (const auto& s : bl->sectors)
        for (std::uint32_t c : s.configs) {
            put<double>(f, full_state[c].real());
            put<double>(f, full_state[c].imag());
        }
    if (!f) throw std::runtime_error("write failed: " + path);
}

Eigen::VectorXcd load_state(const std::string& path, int& n_sites, int& local_dim) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    const Header h = read_header(f, path);
    if (h.kind != kKindState) throw std::runtime_error(path + ": not a state file");
    auto bl = match_blocking(h, path);
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(bl->full_dim());
    for (const auto& s : bl->sectors)
        for (std::uint32_t c : s.configs) {
            const double re = get<double>(f);
            const double im = get<double>(f);
            state[c] = cd(re, im);
        }
    n_sites = h.n_sites;
    local_dim = h.local_dim;
    return state;
}

void save_density_matrix(const std::string& path, const DensityMatrix& rho) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_header(f, kKindDensity, rho.blocking->local_dim, rho.blocking->num_sites,
                 *rho.blocking);
    for (const auto& b : rho.blocks)
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) {
                put<double>(f, b(i, j).real());
                put<double>(f, b(i, j).imag());
            }
    if (!f) throw std::runtime_error("write failed: " + path);
}

DensityMatrix load_density_matrix(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    const Header h = read_header(f, path);
    if (h.kind != kKindDensity)
        throw std::runtime_error(path + ": not a density-matrix file");
    DensityMatrix rho;
    rho.blocking = match_blocking(h, path);
    for (const auto& s : rho.blocking->sectors) {
        const int n = s.dim();
        Eigen::MatrixXcd b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double re = get<double>(f);
                const double im = get<double>(f);
                b(i, j) = cd(re, im);
            }
        rho.blocks.push_back(std::move(b));
    }
    return rho;
}

}  // namespace parham
