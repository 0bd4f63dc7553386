#include "pruwalk/walks.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <unordered_set>

#include "pruwalk/errors.hpp"
#include "pruwalk/util.hpp"
#include "pruwalk/walk_dp.hpp"

namespace pruwalk::walks {

namespace {

struct Dir {
    int dx, dy;
    char c;
};
constexpr Dir kDirs[4] = {{0, 1, 'N'}, {0, -1, 'S'}, {1, 0, 'E'}, {-1, 0, 'W'}};

std::uint64_t vkey(int x, int y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x + 0x40000000)) << 32) |
           static_cast<std::uint32_t>(y);
}

struct State {
    std::unordered_set<std::uint64_t> occ;
    int x = 0, y = 0;
    int xmin = 0, xmax = 0, ymax = 0;  // ymin is pinned at 0 by the origin
    int nu = 0;                        // steps with both endpoints on the surface
    int n = 0;

    State() { occ.insert(vkey(0, 0)); }

    bool occupied(int px, int py) const { return occ.count(vkey(px, py)) != 0; }

    // A step is prudent when the axial ray ahead of it contains no occupied
    // vertex; only positions inside the bounding box can be occupied.
    bool prudent(const Dir& d) const {
        int px = x + d.dx, py = y + d.dy;
        while (px >= xmin && px <= xmax && py >= 0 && py <= ymax) {
            if (occupied(px, py)) return false;
            px += d.dx;
            py += d.dy;
        }
        return true;
    }

    bool on_east() const { return x == xmax; }
    bool on_north() const { return y == ymax; }
    bool on_west() const { return x == xmin && xmax > xmin; }  // zero-width boxes count as E

    bool side_ok(Family fam) const {
        switch (fam) {
            case Family::one_sided: return on_east();
            case Family::two_sided: return on_east() || on_north();
            case Family::three_sided: return on_east() || on_north() || on_west();
        }
        return false;
    }

    // three_sided: no step between the SE and SW corners of a width-one box.
    bool corner_step_forbidden(Family fam, const Dir& d) const {
        if (fam != Family::three_sided) return false;
        if (d.dy != 0 || y != 0) return false;
        if (xmax - xmin != 1) return false;
        int x2 = x + d.dx;
        return std::min(x, x2) == xmin && std::max(x, x2) == xmax;
    }

    bool try_step(const Dir& d, Family fam) {
        if (y + d.dy < 0) return false;
        if (corner_step_forbidden(fam, d)) return false;
        if (!prudent(d)) return false;
        int nx = x + d.dx, ny = y + d.dy;
        int oxmin = xmin, oxmax = xmax, oymax = ymax;
        xmin = std::min(xmin, nx);
        xmax = std::max(xmax, nx);
        ymax = std::max(ymax, ny);
        // side condition must hold at every prefix
        int ox = x, oy = y;
        x = nx;
        y = ny;
        if (!side_ok(fam)) {
            x = ox; y = oy; xmin = oxmin; xmax = oxmax; ymax = oymax;
            return false;
        }
        occ.insert(vkey(nx, ny));
        if (oy == 0 && ny == 0) ++nu;
        ++n;
        return true;
    }

    void undo_step(const Dir& d, int oxmin, int oxmax, int oymax) {
        occ.erase(vkey(x, y));
        if (y == 0 && y - d.dy == 0) --nu;
        x -= d.dx;
        y -= d.dy;
        xmin = oxmin;
        xmax = oxmax;
        ymax = oymax;
        --n;
    }
};

void record(EnumResult& out, const State& st) {
    Poly w = Poly::term(Mono::sym(Sym::a, static_cast<unsigned>(st.nu)), Rat(1));
    int n = st.n;
    out.z_tail[n] += w;
    out.endpoint_height_sum[n] += w.times_rat(Rat(st.y));
    out.max_height_sum[n] += w.times_rat(Rat(st.ymax));
    if (st.y == 0) {
        out.z_loop[n] += w;
        out.max_height_sum_loop[n] += w.times_rat(Rat(st.ymax));
    }
    if (out.family == Family::two_sided) {
        if (st.on_east()) out.right2[n][{st.ymax - st.y, st.y}] += w;
        if (st.on_north()) out.top2[n][{st.xmax - st.x, st.y}] += w;
    } else if (out.family == Family::three_sided) {
        // R* records E-enders only: a W-ender is the mirror image of an
        // E-ender that the series already counts once per mirror pair.
        if (st.on_east()) out.right3[n][{st.ymax - st.y, st.y, st.x - st.xmin}] += w;
        if (st.on_north()) out.top3[n][{st.xmax - st.x, st.y, st.x - st.xmin}] += w;
    }
}

void dfs(EnumResult& out, State& st, Family fam, int n_max) {
    record(out, st);
    if (st.n == n_max) return;
    for (const Dir& d : kDirs) {
        int oxmin = st.xmin, oxmax = st.xmax, oymax = st.ymax;
        if (st.try_step(d, fam)) {
            dfs(out, st, fam, n_max);
            st.undo_step(d, oxmin, oxmax, oymax);
        }
    }
}

EnumResult make_result(Family fam, int n_max) {
    EnumResult out;
    out.family = fam;
    out.n_max = n_max;
    out.z_tail.resize(n_max + 1);
    out.z_loop.resize(n_max + 1);
    out.endpoint_height_sum.resize(n_max + 1);
    out.max_height_sum.resize(n_max + 1);
    out.max_height_sum_loop.resize(n_max + 1);
    if (fam == Family::two_sided) {
        out.right2.resize(n_max + 1);
        out.top2.resize(n_max + 1);
    } else if (fam == Family::three_sided) {
        out.right3.resize(n_max + 1);
        out.top3.resize(n_max + 1);
    }
    return out;
}

void merge_into(EnumResult& acc, const EnumResult& part) {
    for (int n = 0; n <= acc.n_max; ++n) {
        acc.z_tail[n] += part.z_tail[n];
        acc.z_loop[n] += part.z_loop[n];
        acc.endpoint_height_sum[n] += part.endpoint_height_sum[n];
        acc.max_height_sum[n] += part.max_height_sum[n];
        acc.max_height_sum_loop[n] += part.max_height_sum_loop[n];
        if (acc.family == Family::two_sided) {
            for (const auto& [k, p] : part.right2[n]) acc.right2[n][k] += p;
            for (const auto& [k, p] : part.top2[n]) acc.top2[n][k] += p;
        } else if (acc.family == Family::three_sided) {
            for (const auto& [k, p] : part.right3[n]) acc.right3[n][k] += p;
            for (const auto& [k, p] : part.top3[n]) acc.top3[n][k] += p;
        }
    }
}

const Dir& dir_of(char c) {
    for (const Dir& d : kDirs)
        if (d.c == c) return d;
    throw Error(std::string("invalid step character '") + c + "'");
}

}  // namespace

bool is_admissible(const Walk& w, Family fam) {
    State st;
    if (!st.side_ok(fam)) return false;  // empty walk: trivially on all sides
    for (char c : w.steps) {
        const Dir& d = dir_of(c);
        if (!st.try_step(d, fam)) return false;
    }
    return true;
}

EnumResult enumerate_walks(Family fam, int n_max, const EnumLimits& lim) {
    if (n_max > lim.dfs_guard)
        throw LimitError("enumerate_walks: n_max " + std::to_string(n_max) +
                         " exceeds the DFS guard " + std::to_string(lim.dfs_guard));
    EnumResult out = make_result(fam, n_max);
    int workers = util::thread_count();
    int split = (workers > 1 && n_max >= 8) ? 3 : 0;
    if (split == 0) {
        State st;
        dfs(out, st, fam, n_max);
        return out;
    }

    // Split the search over admissible prefixes; partial tables merge by
    // exact addition. Depths below the split are recorded inline, depth-split
    // prefixes become independent subtree roots.
    std::vector<std::string> prefixes;
    {
        State st;
        std::string cur;
        // record all nodes of depth < split
        struct Rec {
            EnumResult* out;
            Family fam;
            int split;
            void walk(State& s, std::string& c, std::vector<std::string>& px) {
                record(*out, s);
                if (static_cast<int>(c.size()) == split - 1) {
                    // children are the subtree roots
                    for (const Dir& d : kDirs) {
                        int oxmin = s.xmin, oxmax = s.xmax, oymax = s.ymax;
                        if (s.try_step(d, fam)) {
                            c.push_back(d.c);
                            px.push_back(c);
                            c.pop_back();
                            s.undo_step(d, oxmin, oxmax, oymax);
                        }
                    }
                    return;
                }
                for (const Dir& d : kDirs) {
                    int oxmin = s.xmin, oxmax = s.xmax, oymax = s.ymax;
                    if (s.try_step(d, fam)) {
                        c.push_back(d.c);
                        walk(s, c, px);
                        c.pop_back();
                        s.undo_step(d, oxmin, oxmax, oymax);
                    }
                }
            }
        } rec{&out, fam, split};
        rec.walk(st, cur, prefixes);
    }
    std::vector<EnumResult> parts(prefixes.size());
    util::parallel_for(static_cast<int>(prefixes.size()), [&](int idx) {
        EnumResult part = make_result(fam, n_max);
        State st;
        for (char c : prefixes[static_cast<std::size_t>(idx)]) {
            if (!st.try_step(dir_of(c), fam)) throw Error("enumerate_walks: bad prefix replay");
        }
        dfs(part, st, fam, n_max);
        parts[static_cast<std::size_t>(idx)] = std::move(part);
    });
    for (const auto& part : parts) merge_into(out, part);
    return out;
}

std::vector<double> HeightTable::mean_endpoint() const {
    std::vector<double> m(total.size());
    for (std::size_t n = 0; n < total.size(); ++n)
        m[n] = total[n] == 0 ? 0.0 : rat_to_double(endpoint_sum[n] / total[n]);
    return m;
}

std::vector<double> HeightTable::mean_max() const {
    std::vector<double> m(total.size());
    for (std::size_t n = 0; n < total.size(); ++n)
        m[n] = total[n] == 0 ? 0.0 : rat_to_double(max_sum[n] / total[n]);
    return m;
}

HeightTable height_statistics(Family fam, int n_max, const Rat& a, Endpoint ep) {
    HeightTable t;
    t.total.resize(n_max + 1);
    t.endpoint_sum.resize(n_max + 1);
    t.max_sum.resize(n_max + 1);
    if (fam == Family::two_sided && n_max > 16) {
        auto dp = count_walks_dp<Rat>(n_max, a);
        for (int n = 0; n <= n_max; ++n) {
            if (ep == Endpoint::tail) {
                t.total[n] = dp.z_tail(n);
                t.endpoint_sum[n] = dp.endpoint_sum(n);
                t.max_sum[n] = dp.max_sum(n);
            } else {
                t.total[n] = dp.z_loop(n);
                t.endpoint_sum[n] = 0;  // loops end on the surface
                t.max_sum[n] = dp.max_sum_loop(n);
            }
        }
        return t;
    }
    EnumResult e = enumerate_walks(fam, n_max);
    for (int n = 0; n <= n_max; ++n) {
        const Poly& z = ep == Endpoint::tail ? e.z_tail[n] : e.z_loop[n];
        const Poly& ms = ep == Endpoint::tail ? e.max_height_sum[n] : e.max_height_sum_loop[n];
        t.total[n] = z.eval(a, 1, 1, 1);
        t.endpoint_sum[n] = ep == Endpoint::tail ? e.endpoint_height_sum[n].eval(a, 1, 1, 1) : Rat(0);
        t.max_sum[n] = ms.eval(a, 1, 1, 1);
    }
    return t;
}

}  // namespace pruwalk::walks
