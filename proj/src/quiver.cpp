#include "mirror/quiver.hpp"

namespace mirror {

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}

Quiver::Quiver(int n) : n_(n) {
    if (n < 1) throw DomainError("quiver rank must be at least 1");
    const std::size_t m = static_cast<std::size_t>(n + 2);
    vindex_.assign(m * m, kNone);
    cindex_.assign(m * m, kNone);
    dindex_.assign(m * m, kNone);
    for (int i = 1; i <= n + 1; ++i)
        for (int j = 1; j <= i; ++j) {
            vindex_[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] = vertices_.size();
            vertices_.push_back({i, j});
        }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) {
            cindex_[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] = arrows_.size();
            arrows_.push_back({QuiverArrow::C, i, j, vertex(i, j), vertex(i + 1, j)});
        }
    for (int i = 2; i <= n + 1; ++i)
        for (int j = 2; j <= i; ++j) {
            dindex_[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)] = arrows_.size();
            arrows_.push_back({QuiverArrow::D, i, j, vertex(i, j - 1), vertex(i, j)});
        }
    // square with corners v_{i,j-1}, v_{i,j}, v_{i+1,j-1}, v_{i+1,j}
    for (int i = 2; i <= n; ++i)
        for (int j = 2; j <= i; ++j) boxes_.push_back({d(i, j), c(i, j), c(i, j - 1), d(i + 1, j)});
}

std::vector<std::size_t> Quiver::lower_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!vertices_[v].diagonal()) out.push_back(v);
    return out;
}

std::size_t Quiver::vertex(int i, int j) const {
    const std::size_t m = static_cast<std::size_t>(n_ + 2);
    if (i < 1 || j < 1 || i > n_ + 1 || j > i) throw DomainError("no vertex v" + std::to_string(i) + std::to_string(j));
    return vindex_[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)];
}

std::size_t Quiver::c(int i, int j) const {
    const std::size_t m = static_cast<std::size_t>(n_ + 2);
    if (i < 1 || j < 1 || i > n_ || j > i) throw DomainError("no arrow c" + std::to_string(i) + std::to_string(j));
    return cindex_[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)];
}

std::size_t Quiver::d(int i, int j) const {
    const std::size_t m = static_cast<std::size_t>(n_ + 2);
    if (i < 2 || j < 2 || i > n_ + 1 || j > i) throw DomainError("no arrow d" + std::to_string(i) + std::to_string(j));
    return dindex_[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)];
}

Quiver build_quiver(int n) { return Quiver(n); }

}  // namespace mirror
