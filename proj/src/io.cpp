#include "omflux/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace omflux {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", x);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_pgm16_atomic(const std::filesystem::path& path, const PgmImage& image) {
    if (image.width < 1 || image.height < 1 ||
        image.data.size() != static_cast<std::size_t>(image.width) * image.height)
        throw std::invalid_argument("write_pgm16_atomic: inconsistent dimensions");
    const auto [lo_it, hi_it] = std::minmax_element(image.data.begin(), image.data.end());
    const double lo = *lo_it, hi = *hi_it;
    const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;
    std::string out = "P5\n" + std::to_string(image.width) + " " +
                      std::to_string(image.height) + "\n65535\n";
    out.reserve(out.size() + image.data.size() * 2);
    for (double v : image.data) {
        const auto q = static_cast<std::uint16_t>(std::lround((v - lo) * scale));
        out.push_back(static_cast<char>(q >> 8));
        out.push_back(static_cast<char>(q & 0xff));
    }
    write_text_atomic(path, out);
    write_text_atomic(path.string() + ".json",
                      "{\"width\": " + std::to_string(image.width) +
                          ", \"height\": " + std::to_string(image.height) +
                          ", \"min\": " + sci(lo) + ", \"max\": " + sci(hi) + "}\n");
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a(bytes);
}

void write_lattice_csv(const std::filesystem::path& dir, const LatticeGraph& graph) {
    std::string sites = "id,kind,row,col,omega\n";
    for (const Site& s : graph.sites)
        sites += std::to_string(s.id) + "," + to_string(s.kind) + "," + sci(s.row) + "," +
                 sci(s.col) + "," + sci(s.omega) + "\n";
    write_text_atomic(dir / "sites.csv", sites);

    std::string links = "i,j,kind,amplitude,phase\n";
    for (const Link& l : graph.links)
        links += std::to_string(l.i) + "," + std::to_string(l.j) + "," + to_string(l.kind) +
                 "," + sci(l.amplitude) + "," + sci(l.phase) + "\n";
    write_text_atomic(dir / "links.csv", links);

    std::string fluxes = "plaquette_row,plaquette_col,flux\n";
    for (const auto& p : plaquette_fluxes(graph).plaquettes)
        fluxes += std::to_string(p.row) + "," + std::to_string(p.col) + "," + sci(p.flux) + "\n";
    write_text_atomic(dir / "fluxes.csv", fluxes);
}

}  // namespace omflux
