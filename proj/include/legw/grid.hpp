#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "legw/ambient.hpp"
#include "legw/core.hpp"
#include "legw/spectral.hpp"

namespace legw {

// Doubly periodic sample of an immersion into S^5 with cached spectral
// derivatives. Immutable after construction; the cache is fill-once.
class ImmersionGrid {
public:
    ImmersionGrid(VectorField values) : values_(std::move(values)) {
        if (values_.nu() < 16 || values_.nv() < 16 || values_.nu() % 2 || values_.nv() % 2)
            throw std::invalid_argument("ImmersionGrid: grid sizes must be even and >= 16");
        for (size_t k = 0; k < values_.size(); ++k)
            if (std::abs(norm(values_[k]) - 1.0) > 1e-10)
                throw NonTangent("ImmersionGrid: sample off the unit sphere beyond 1e-10");
    }

    int nu() const { return values_.nu(); }
    int nv() const { return values_.nv(); }
    const VectorField& values() const { return values_; }

    const VectorField& derivative(int ou, int ov) const {
        if (ou == 0 && ov == 0) return values_;
        auto key = std::make_pair(ou, ov);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, spectral_derivative(values_, ou, ov)).first;
        return it->second;
    }

private:
    VectorField values_;
    mutable std::map<std::pair<int, int>, VectorField> cache_;
};

// Max over the grid of |alpha(F_u)|/|F_u| and |alpha(F_v)|/|F_v|; zero iff
// the sampled surface is Legendrian to resolution.
inline Real legendre_residual(const ImmersionGrid& grid) {
    const VectorField& F = grid.values();
    const VectorField& Fu = grid.derivative(1, 0);
    const VectorField& Fv = grid.derivative(0, 1);
    Real worst = 0;
    for (size_t k = 0; k < F.size(); ++k) {
        const AmbientVector R = j0(F[k]);
        worst = std::max(worst, std::abs(dot(R, Fu[k])) / norm(Fu[k]));
        worst = std::max(worst, std::abs(dot(R, Fv[k])) / norm(Fv[k]));
    }
    return worst;
}

// ---- LEWGRID checkpoint format ----
// line 1: "LEWGRID 1"
// line 2: "nu nv time"
// then nu*nv lines of 6 decimals (17 significant digits), row-major in u.

struct Checkpoint {
    VectorField values;
    Real time = 0;
};

inline void write_checkpoint(std::ostream& os, const VectorField& values, Real time) {
    char buf[512];
    os << "LEWGRID 1\n";
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", values.nu(), values.nv(), time);
    os << buf;
    for (size_t k = 0; k < values.size(); ++k) {
        const AmbientVector& p = values[k];
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g\n", p[0], p[1], p[2], p[3],
                      p[4], p[5]);
        os << buf;
    }
}

// Atomic on-disk variant: write to a temp file, then rename.
inline void write_checkpoint_file(const std::filesystem::path& path, const VectorField& values, Real time) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        write_checkpoint(os, values, time);
    }
    std::filesystem::rename(tmp, path);
}

inline Checkpoint read_checkpoint(std::istream& is) {
    std::string line;
    long lineno = 0;
    auto next_line = [&]() {
        if (!std::getline(is, line)) throw FormatError("unexpected end of file", lineno + 1);
        ++lineno;
    };
    next_line();
    {
        std::istringstream hs(line);
        std::string magic;
        int version = -1;
        hs >> magic >> version;
        if (magic != "LEWGRID") throw FormatError("missing LEWGRID header", lineno);
        if (version != 1) throw FormatError("unsupported version " + std::to_string(version), lineno);
    }
    next_line();
    int nu = 0, nv = 0;
    Real time = 0;
    {
        std::istringstream hs(line);
        hs >> nu >> nv >> time;
        if (!hs || nu <= 0 || nv <= 0) throw FormatError("bad grid header", lineno);
    }
    VectorField values(nu, nv);
    for (size_t k = 0; k < values.size(); ++k) {
        next_line();
        std::istringstream vs(line);
        AmbientVector p;
        for (int c = 0; c < 6; ++c) vs >> p[c];
        if (!vs) throw FormatError("expected 6 components", lineno);
        values[k] = p;
    }
    return {std::move(values), time};
}

inline Checkpoint read_checkpoint_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return read_checkpoint(is);
}

}  // namespace legw
