#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sievecost/hashing.hpp"
#include "sievecost/lattice.hpp"
#include "sievecost/laws.hpp"
#include "sievecost/rng.hpp"

namespace sievecost {
namespace sieve {

using hashing::HashFamily;
using hashing::SieveAlg;
using lattice::LatticeBasis;
using lattice::LatticeVector;

enum class LoopId { nv, gauss1, gauss2 };
enum class SearchSpaceKind { centers, list, candidates };

inline const char* loop_id_name(LoopId l) {
    switch (l) {
        case LoopId::nv: return "nv";
        case LoopId::gauss1: return "gauss1";
        case LoopId::gauss2: return "gauss2";
    }
    return "?";
}

inline LoopId loop_id_from_name(const std::string& s) {
    if (s == "nv") return LoopId::nv;
    if (s == "gauss1") return LoopId::gauss1;
    if (s == "gauss2") return LoopId::gauss2;
    throw std::invalid_argument("unknown loop id '" + s + "'");
}

struct SearchEvent {
    std::uint64_t step_index = 0;
    LoopId loop_id = LoopId::nv;
    std::uint64_t list_size = 0;       // |S|, |L| or |C| actually scanned
    std::uint64_t solutions_found = 0;
    SearchSpaceKind kind = SearchSpaceKind::list;
};

struct SieveConfig {
    SieveAlg alg = SieveAlg::gauss;
    HashFamily hash = HashFamily::none;
    double gamma = 0.97;  // NV contraction
    int zeta = 500;       // Gauss collision termination count
    int kappa = 32;
    int hash_k = 1;
    int hash_t = 1;
    double hash_alpha = 0.5;
    std::size_t nv_initial_list = 0;    // 0: heuristic law
    std::uint64_t max_iterations = 50000000;
    bool record_history = true;

    void validate() const {
        if (alg == SieveAlg::nv && !(gamma > 2.0 / 3.0 && gamma < 1.0))
            throw std::domain_error("NV sieve needs gamma in (2/3, 1)");
        if (zeta < 1) throw std::domain_error("zeta must be >= 1");
        if (hash != HashFamily::none && (hash_k < 1 || hash_t < 1))
            throw std::domain_error("hash parameters k, t must be >= 1");
    }
};

struct SieveRunReport {
    LatticeVector shortest;
    std::vector<SearchEvent> history;
    std::vector<LatticeVector> final_list;  // Gauss: the list at termination
    std::size_t max_list_size = 0;
    std::uint64_t iterations = 0;
    std::uint64_t collisions = 0;
    bool found_nonzero = false;
};

// If min ||v +- w|| < ||v||, returns that reduction (both signs can never win
// at once; an exact tie means no strict improvement and returns nothing).
inline std::optional<LatticeVector> reduce_pair(const LatticeVector& v,
                                                const LatticeVector& w,
                                                int kappa = 32) {
    const std::int64_t d = lattice::dot(v, w);
    if (w.norm2 >= 2 * std::llabs(d)) return std::nullopt;
    return d > 0 ? lattice::sub(v, w, kappa) : lattice::add(v, w, kappa);
}

namespace detail {

// Contiguous vector pool with swap-remove, the scan target of every search.
class VecList {
public:
    explicit VecList(int dim) : d_(dim) {}

    std::size_t size() const { return norm2_.size(); }
    int dim() const { return d_; }
    const std::int32_t* at(std::size_t i) const { return coords_.data() + i * d_; }
    std::int64_t norm2(std::size_t i) const { return norm2_[i]; }

    std::size_t push(const LatticeVector& v) {
        coords_.insert(coords_.end(), v.c.begin(), v.c.end());
        norm2_.push_back(v.norm2);
        return norm2_.size() - 1;
    }

    LatticeVector get(std::size_t i) const {
        LatticeVector v;
        v.c.assign(at(i), at(i) + d_);
        v.norm2 = norm2_[i];
        return v;
    }

    // moves the last entry into slot i; returns the index it moved from
    std::size_t swap_remove(std::size_t i) {
        const std::size_t last = norm2_.size() - 1;
        if (i != last) {
            std::copy(at(last), at(last) + d_, coords_.begin() + i * d_);
            norm2_[i] = norm2_[last];
        }
        coords_.resize(last * d_);
        norm2_.pop_back();
        return last;
    }

private:
    int d_;
    std::vector<std::int32_t> coords_;
    std::vector<std::int64_t> norm2_;
};

inline void unit_normalize(const std::int32_t* v, int d, std::vector<double>& out) {
    out.resize(d);
    double n2 = 0.0;
    for (int i = 0; i < d; ++i) {
        out[i] = v[i];
        n2 += out[i] * out[i];
    }
    const double inv = n2 > 0.0 ? 1.0 / std::sqrt(n2) : 0.0;
    for (int i = 0; i < d; ++i) out[i] *= inv;
}

// Hash/filter tables over a VecList.  Entries are indexed by list slot; the
// sieve keeps slots and tables in sync across swap-removes.
class Tables {
public:
    Tables(const SieveConfig& cfg, int dim, Rng& rng) : cfg_(cfg), d_(dim) {
        switch (cfg.hash) {
            case HashFamily::none:
                break;
            case HashFamily::angular:
                ang_ = std::make_unique<hashing::AngularHashSim>(dim, cfg.hash_k,
                                                                 cfg.hash_t, rng);
                maps_.resize(cfg.hash_t);
                break;
            case HashFamily::spherical_lsh:
                sph_ = std::make_unique<hashing::SphericalLshSim>(dim, cfg.hash_k,
                                                                  cfg.hash_t, rng);
                maps_.resize(cfg.hash_t);
                break;
            case HashFamily::spherical_lsf:
                lsf_ = std::make_unique<hashing::SphericalLsfSim>(
                    dim, cfg.hash_t, cfg.hash_alpha, rng);
                filter_buckets_.resize(cfg.hash_t);
                break;
        }
    }

    bool active() const { return cfg_.hash != HashFamily::none; }

    void insert(std::size_t idx, const std::int32_t* v) {
        if (!active()) return;
        if (lsf_) {
            lsf_relevant(v, scratch_rel_);
            for (auto u : scratch_rel_)
                filter_buckets_[u].push_back(static_cast<std::uint32_t>(idx));
            return;
        }
        for (int t = 0; t < cfg_.hash_t; ++t)
            maps_[t][key(t, v)].push_back(static_cast<std::uint32_t>(idx));
    }

    void remove(std::size_t idx, const std::int32_t* v) {
        if (!active()) return;
        if (lsf_) {
            lsf_relevant(v, scratch_rel_);
            for (auto u : scratch_rel_) erase_from(filter_buckets_[u], idx);
            return;
        }
        for (int t = 0; t < cfg_.hash_t; ++t) {
            auto it = maps_[t].find(key(t, v));
            if (it != maps_[t].end()) erase_from(it->second, idx);
        }
    }

    // after VecList::swap_remove moved entry `from` into slot `to`
    void reindex(std::size_t from, std::size_t to, const std::int32_t* v) {
        if (!active() || from == to) return;
        if (lsf_) {
            lsf_relevant(v, scratch_rel_);
            for (auto u : scratch_rel_) replace_in(filter_buckets_[u], from, to);
            return;
        }
        for (int t = 0; t < cfg_.hash_t; ++t) {
            auto it = maps_[t].find(key(t, v));
            if (it != maps_[t].end()) replace_in(it->second, from, to);
        }
    }

    // candidate slots colliding with v in at least one table (deduplicated)
    void candidates(const std::int32_t* v, std::size_t list_size,
                    std::vector<std::uint32_t>& out) {
        out.clear();
        if (seen_.size() < list_size) seen_.resize(list_size, 0);
        ++epoch_;
        auto take = [&](const std::vector<std::uint32_t>& bucket) {
            for (auto idx : bucket) {
                if (seen_[idx] != epoch_) {
                    seen_[idx] = epoch_;
                    out.push_back(idx);
                }
            }
        };
        if (lsf_) {
            lsf_relevant(v, scratch_rel_);
            for (auto u : scratch_rel_) take(filter_buckets_[u]);
            return;
        }
        for (int t = 0; t < cfg_.hash_t; ++t) {
            auto it = maps_[t].find(key(t, v));
            if (it != maps_[t].end()) take(it->second);
        }
    }

private:
    std::uint64_t key(int t, const std::int32_t* v) {
        if (ang_) return ang_->key(t, v);
        unit_normalize(v, d_, scratch_unit_);
        return sph_->key(t, scratch_unit_.data());
    }

    void lsf_relevant(const std::int32_t* v, std::vector<std::uint32_t>& out) {
        unit_normalize(v, d_, scratch_unit_);
        lsf_->relevant(scratch_unit_.data(), out);
    }

    static void erase_from(std::vector<std::uint32_t>& bucket, std::size_t idx) {
        for (auto& x : bucket) {
            if (x == idx) {
                x = bucket.back();
                bucket.pop_back();
                return;
            }
        }
    }

    static void replace_in(std::vector<std::uint32_t>& bucket, std::size_t from,
                           std::size_t to) {
        for (auto& x : bucket) {
            if (x == from) {
                x = static_cast<std::uint32_t>(to);
                return;
            }
        }
    }

    const SieveConfig& cfg_;
    int d_;
    std::unique_ptr<hashing::AngularHashSim> ang_;
    std::unique_ptr<hashing::SphericalLshSim> sph_;
    std::unique_ptr<hashing::SphericalLsfSim> lsf_;
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>> maps_;
    std::vector<std::vector<std::uint32_t>> filter_buckets_;
    std::vector<std::uint32_t> scratch_rel_;
    std::vector<double> scratch_unit_;
    std::vector<std::uint32_t> seen_;
    std::uint32_t epoch_ = 0;
};

inline std::int64_t dot_raw(const std::int32_t* a, const std::int32_t* b, int d) {
    std::int64_t s = 0;
    for (int i = 0; i < d; ++i) s += static_cast<std::int64_t>(a[i]) * b[i];
    return s;
}

struct ScanResult {
    std::uint64_t solutions = 0;
    std::size_t first = SIZE_MAX;
    std::size_t scanned = 0;
};

// loop-1 condition: some sign of v +- w beats ||v||  <=>  ||w||^2 < 2|v.w|
// loop-2 condition: some sign of w +- v beats ||w||  <=>  ||v||^2 < 2|v.w|
template <bool kLoop2>
ScanResult scan_gauss(const VecList& L, const std::vector<std::uint32_t>* cand,
                      const std::int32_t* v, std::int64_t v_norm2) {
    ScanResult r;
    const int d = L.dim();
    const std::size_t n = cand ? cand->size() : L.size();
    r.scanned = n;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = cand ? (*cand)[j] : j;
        const std::int64_t dt = dot_raw(v, L.at(i), d);
        const std::int64_t lhs = kLoop2 ? v_norm2 : L.norm2(i);
        if (lhs < 2 * std::llabs(dt)) {
            if (r.solutions == 0) r.first = i;
            ++r.solutions;
        }
    }
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// GaussSieve (with optional LSH/LSF candidate filtering)
// ---------------------------------------------------------------------------

inline SieveRunReport run_gauss_sieve(const LatticeBasis& basis,
                                      const SieveConfig& cfg, Rng rng) {
    cfg.validate();
    if (cfg.alg != SieveAlg::gauss)
        throw std::invalid_argument("run_gauss_sieve: config is not gauss");
    const int d = basis.d;
    lattice::KleinSampler sampler(basis, cfg.kappa);
    detail::VecList list(d);
    detail::Tables tables(cfg, d, rng);
    std::vector<LatticeVector> stack;
    SieveRunReport rep;

    LatticeVector best;
    auto consider = [&](const LatticeVector& u) {
        if (u.is_zero()) return;
        if (!rep.found_nonzero || u.norm2 < best.norm2) {
            best = u;
            rep.found_nonzero = true;
        }
    };

    std::vector<std::uint32_t> cand;
    const bool hashed = tables.active();

    while (rep.collisions < static_cast<std::uint64_t>(cfg.zeta) &&
           rep.iterations < cfg.max_iterations) {
        ++rep.iterations;
        LatticeVector v;
        if (stack.empty()) {
            v = sampler.sample(rng);
        } else {
            v = stack.back();
            stack.pop_back();
        }
        consider(v);

        if (hashed) tables.candidates(v.c.data(), list.size(), cand);
        const std::vector<std::uint32_t>* cptr = hashed ? &cand : nullptr;

        bool changed = false;
        // loop 1: reduce v against the list until no reduction applies
        while (true) {
            const auto r = detail::scan_gauss<false>(list, cptr, v.c.data(), v.norm2);
            if (cfg.record_history)
                rep.history.push_back({rep.iterations, LoopId::gauss1,
                                       r.scanned, r.solutions,
                                       hashed ? SearchSpaceKind::candidates
                                              : SearchSpaceKind::list});
            if (r.solutions == 0) break;
            auto red = reduce_pair(v, list.get(r.first), cfg.kappa);
            v = std::move(*red);
            changed = true;
            consider(v);
        }
        // loop 2: pull list vectors that v reduces
        while (true) {
            const auto r = detail::scan_gauss<true>(list, cptr, v.c.data(), v.norm2);
            if (cfg.record_history)
                rep.history.push_back({rep.iterations, LoopId::gauss2,
                                       r.scanned, r.solutions,
                                       hashed ? SearchSpaceKind::candidates
                                              : SearchSpaceKind::list});
            if (r.solutions == 0) break;
            const std::size_t i = r.first;
            LatticeVector w = list.get(i);
            tables.remove(i, w.c.data());
            const std::size_t moved_from = list.swap_remove(i);
            if (moved_from != i) {
                tables.reindex(moved_from, i, list.at(i));
                if (hashed) {
                    cand.erase(std::remove(cand.begin(), cand.end(),
                                           static_cast<std::uint32_t>(i)),
                               cand.end());
                    for (auto& x : cand)
                        if (x == moved_from) x = static_cast<std::uint32_t>(i);
                }
            } else if (hashed) {
                cand.erase(std::remove(cand.begin(), cand.end(),
                                       static_cast<std::uint32_t>(i)),
                           cand.end());
            }
            auto red = reduce_pair(w, v, cfg.kappa);
            w = std::move(*red);
            if (!w.is_zero()) {
                stack.push_back(w);
                consider(w);
            }
        }

        if (v.is_zero()) {
            ++rep.collisions;
        } else if (changed) {
            stack.push_back(v);
        } else {
            const std::size_t idx = list.push(v);
            tables.insert(idx, list.at(idx));
        }
        rep.max_list_size = std::max(rep.max_list_size, list.size());
    }

    if (!rep.found_nonzero)
        throw std::runtime_error("gauss sieve: no nonzero vector produced");
    rep.shortest = best;
    rep.final_list.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) rep.final_list.push_back(list.get(i));
    return rep;
}

// ---------------------------------------------------------------------------
// NVSieve (with optional LSH/LSF candidate filtering)
// ---------------------------------------------------------------------------

inline std::size_t nv_heuristic_initial_list(int d) {
    return static_cast<std::size_t>(std::ceil(std::exp(laws::log_nv_initial_list(d))));
}

inline SieveRunReport run_nv_sieve(const LatticeBasis& basis,
                                   const SieveConfig& cfg, Rng rng,
                                   const std::vector<LatticeVector>* initial = nullptr) {
    cfg.validate();
    if (cfg.alg != SieveAlg::nv)
        throw std::invalid_argument("run_nv_sieve: config is not nv");
    const int d = basis.d;
    SieveRunReport rep;

    std::vector<LatticeVector> list;
    if (initial) {
        list = *initial;
    } else {
        lattice::KleinSampler sampler(basis, cfg.kappa);
        const std::size_t n0 = cfg.nv_initial_list ? cfg.nv_initial_list
                                                   : nv_heuristic_initial_list(d);
        list.reserve(n0);
        for (std::size_t i = 0; i < n0; ++i) list.push_back(sampler.sample(rng));
    }
    rep.max_list_size = list.size();

    LatticeVector best;
    auto consider = [&](const LatticeVector& u) {
        if (u.is_zero()) return;
        if (!rep.found_nonzero || u.norm2 < best.norm2) {
            best = u;
            rep.found_nonzero = true;
        }
    };
    for (const auto& v : list) consider(v);

    const bool hashed = cfg.hash != HashFamily::none;
    std::vector<std::uint32_t> cand;
    std::uint64_t step = 0;
    while (!list.empty() && rep.iterations < cfg.max_iterations) {
        std::int64_t r2 = 0;
        for (const auto& v : list) r2 = std::max(r2, v.norm2);
        const double bound = cfg.gamma * cfg.gamma * static_cast<double>(r2);

        detail::VecList centers(d);
        detail::Tables tables(cfg, d, rng);
        {
            LatticeVector zero;
            zero.c.assign(d, 0);
            zero.norm2 = 0;
            const std::size_t idx = centers.push(zero);
            tables.insert(idx, centers.at(idx));
        }
        std::vector<LatticeVector> next;
        for (const auto& v : list) {
            const std::vector<std::uint32_t>* cptr = nullptr;
            if (hashed) {
                tables.candidates(v.c.data(), centers.size(), cand);
                cptr = &cand;
            }
            const std::size_t n = cptr ? cptr->size() : centers.size();
            std::uint64_t solutions = 0;
            std::size_t first = SIZE_MAX;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t i = cptr ? (*cptr)[j] : j;
                const std::int64_t dt =
                    detail::dot_raw(v.c.data(), centers.at(i), d);
                const double dist2 = static_cast<double>(v.norm2) +
                                     static_cast<double>(centers.norm2(i)) -
                                     2.0 * static_cast<double>(dt);
                if (dist2 <= bound) {
                    if (solutions == 0) first = i;
                    ++solutions;
                }
            }
            if (cfg.record_history)
                rep.history.push_back({step, LoopId::nv, n, solutions,
                                       hashed ? SearchSpaceKind::candidates
                                              : SearchSpaceKind::centers});
            if (solutions > 0) {
                LatticeVector u = lattice::sub(v, centers.get(first), cfg.kappa);
                if (u.is_zero()) {
                    ++rep.collisions;
                } else {
                    consider(u);
                    next.push_back(std::move(u));
                }
            } else {
                const std::size_t idx = centers.push(v);
                tables.insert(idx, centers.at(idx));
            }
        }
        list = std::move(next);
        ++step;
        rep.iterations = step;
    }

    if (!rep.found_nonzero)
        throw std::runtime_error("nv sieve: no nonzero vector produced");
    rep.shortest = best;
    return rep;
}

inline SieveRunReport run_sieve(const LatticeBasis& basis, const SieveConfig& cfg,
                                Rng rng) {
    return cfg.alg == SieveAlg::gauss ? run_gauss_sieve(basis, cfg, rng)
                                      : run_nv_sieve(basis, cfg, rng);
}

// NVSieve with the restart protocol: begin from the heuristic initial list and
// double it whenever a restart stops improving the best norm.  Stops after two
// consecutive restarts without improvement.
inline SieveRunReport nv_sieve_solve(const LatticeBasis& basis,
                                     const SieveConfig& cfg, Rng rng,
                                     int max_restarts = 6) {
    SieveConfig run_cfg = cfg;
    std::size_t list_size = cfg.nv_initial_list ? cfg.nv_initial_list
                                                : nv_heuristic_initial_list(basis.d);
    SieveRunReport best;
    bool have = false;
    int stale = 0;
    for (int attempt = 0; attempt <= max_restarts && stale < 2; ++attempt) {
        run_cfg.nv_initial_list = list_size;
        SieveRunReport rep = run_nv_sieve(basis, run_cfg, Rng(rng.next_u64()));
        if (!have || rep.shortest.norm2 < best.shortest.norm2) {
            best = std::move(rep);
            have = true;
            stale = 0;
        } else {
            ++stale;
        }
        list_size *= 2;
    }
    return best;
}

// ---------------------------------------------------------------------------
// History CSV
// ---------------------------------------------------------------------------

inline void export_history(const std::vector<SearchEvent>& history,
                           std::ostream& out) {
    out << "step_index,loop_id,list_size,solutions_found\n";
    for (const auto& e : history) {
        out << e.step_index << ',' << loop_id_name(e.loop_id) << ','
            << e.list_size << ',' << e.solutions_found << '\n';
    }
}

inline void export_history(const std::vector<SearchEvent>& history,
                           const std::string& path,
                           const std::string& provenance = "") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (!provenance.empty()) out << "# " << provenance << "\n";
    export_history(history, out);
}

inline std::vector<SearchEvent> import_history(std::istream& in) {
    std::vector<SearchEvent> events;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // first non-comment line is the header
            continue;
        }
        std::stringstream ss(line);
        std::string step, loop, size, sol;
        if (!std::getline(ss, step, ',') || !std::getline(ss, loop, ',') ||
            !std::getline(ss, size, ',') || !std::getline(ss, sol, ','))
            throw std::runtime_error("malformed history row: " + line);
        SearchEvent e;
        e.step_index = std::stoull(step);
        e.loop_id = loop_id_from_name(loop);
        e.list_size = std::stoull(size);
        e.solutions_found = std::stoull(sol);
        e.kind = e.loop_id == LoopId::nv ? SearchSpaceKind::centers
                                         : SearchSpaceKind::list;
        events.push_back(e);
    }
    return events;
}

inline std::vector<SearchEvent> import_history(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return import_history(in);
}

}  // namespace sieve
}  // namespace sievecost
