#include "lfr/schemes.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>

#include "lfr/errors.hpp"

namespace lfr {

int mod1(int b, int a) { return (b - 1) % a + 1; }

std::vector<int> peers(int user, int g, int users) {
    int a = (user + g - 1) / g - 1;
    int skip = mod1(user, g);
    std::vector<int> out;
    for (int j = 1; j <= g; ++j) {
        if (j == skip) continue;
        int other = a * g + j;
        if (other <= users) out.push_back(other);
    }
    return out;
}

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

std::vector<std::vector<int>> mod_classes(int users, int groups) {
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(groups));
    for (int k = 1; k <= users; ++k) classes[mod1(k, groups) - 1].push_back(k);
    return classes;
}

std::vector<ColRange> consecutive(std::int64_t start, int count, std::int64_t length) {
    std::vector<ColRange> ranges(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) ranges[i] = {start + i * length, length};
    return ranges;
}

std::int64_t part1_size(const PartitionLayout& lay) {
    return lay.part1.empty() ? 0 : lay.part1[0].length;
}

std::int64_t part2_size(const PartitionLayout& lay) {
    return lay.part2.empty() ? 0 : lay.part2[0].length;
}

}  // namespace

SchemePlan make_plan(const SystemConfig& config, SchemeVariant variant) {
    SchemePlan plan;
    plan.variant = variant;
    plan.users = config.users;
    if (variant == SchemeVariant::baseline_unicast ||
        variant == SchemeVariant::baseline_full)
        return plan;

    const std::int64_t f = config.symbols;
    const std::int64_t m = config.cache_size;
    const std::int64_t l = config.demand_rows;
    const int users = config.users;
    Regime regime = choose_regime(users, config.mu());
    PartitionLayout& lay = plan.layout;
    lay.branch = regime.branch;
    lay.g = regime.g;

    if (variant == SchemeVariant::corner_grouped) {
        int g = regime.g;
        if (f % g != 0)
            throw config_error("corner scheme needs g | F with g = " + std::to_string(g));
        lay.branch = Branch::interpolate;
        lay.part1 = consecutive(0, g, f / g);
        return plan;
    }
    if (variant == SchemeVariant::rho3) {
        if (regime.branch != Branch::top)
            throw config_error("rho3 needs mu >= (K-1)/K");
        std::int64_t s1 = f - m;
        lay.part1 = consecutive(0, users, s1);
        lay.part2 = {{users * s1, f - users * s1}};
        return plan;
    }
    if (regime.branch != Branch::interpolate)
        throw config_error("rho1/rho2 need mu < (K-1)/K");
    int g = regime.g;
    std::int64_t s1 = g * f - (g + 1) * m;
    std::int64_t s2 = g * m - (g - 1) * f;
    if (s1 > ceil_div(users, g) * l)
        throw config_error("rho1/rho2 need alpha/g <= ceil(K/g)*lambda");
    lay.part1 = consecutive(0, g, s1);
    lay.part2 = consecutive(g * s1, g + 1, s2);
    return plan;
}

namespace {

std::vector<std::int64_t> cached_coords(const SchemePlan& plan, const SystemConfig& config,
                                        int user) {
    std::vector<std::int64_t> coords;
    const PartitionLayout& lay = plan.layout;
    auto push_range = [&coords](const ColRange& r) {
        for (std::int64_t c = r.begin; c < r.begin + r.length; ++c) coords.push_back(c);
    };
    switch (plan.variant) {
        case SchemeVariant::baseline_unicast:
        case SchemeVariant::baseline_full:
            for (std::int64_t c = 0; c < config.cache_size; ++c) coords.push_back(c);
            break;
        case SchemeVariant::corner_grouped: {
            int skip = mod1(user, lay.g);
            for (int i = 1; i <= lay.g; ++i)
                if (i != skip) push_range(lay.part1[i - 1]);
            break;
        }
        case SchemeVariant::rho1:
        case SchemeVariant::rho2: {
            int skip1 = mod1(user, lay.g);
            int skip2 = mod1(user, lay.g + 1);
            for (int i = 1; i <= lay.g; ++i)
                if (i != skip1) push_range(lay.part1[i - 1]);
            for (int i = 1; i <= lay.g + 1; ++i)
                if (i != skip2) push_range(lay.part2[i - 1]);
            break;
        }
        case SchemeVariant::rho3:
            for (int j = 1; j <= config.users; ++j)
                if (j != user) push_range(lay.part1[j - 1]);
            push_range(lay.part2[0]);
            break;
    }
    return coords;
}

}  // namespace

CacheContents place(const SchemePlan& plan, const SystemConfig& config,
                    const Library& library) {
    if (library.w.rows() != static_cast<std::size_t>(config.symbols) ||
        library.w.cols() != 1)
        throw shape_error("library must be an F x 1 column");
    PrimeField field = config.field();
    CacheContents out;
    out.users.reserve(static_cast<std::size_t>(config.users));
    for (int k = 1; k <= config.users; ++k) {
        std::vector<std::int64_t> coords = cached_coords(plan, config, k);
        if (std::ssize(coords) > config.cache_size)
            throw config_error("placement would exceed the cache budget M");
        FieldMatrix p(field, coords.size(), static_cast<std::size_t>(config.symbols));
        FieldMatrix z(field, coords.size(), 1);
        for (std::size_t r = 0; r < coords.size(); ++r) {
            p.set(r, static_cast<std::size_t>(coords[r]), 1);
            z.set(r, 0, library.w(static_cast<std::size_t>(coords[r]), 0));
        }
        out.users.push_back({std::move(p), std::move(z)});
    }
    return out;
}

namespace {

struct TranscriptBuilder {
    PrimeField field;
    std::size_t cols;
    std::vector<FieldMatrix> blocks;
    std::vector<Segment> segments;
    std::int64_t total = 0;

    void add(std::string label, FieldMatrix block) {
        if (block.rows() == 0) return;
        segments.push_back({std::move(label), total, static_cast<std::int64_t>(block.rows())});
        total += static_cast<std::int64_t>(block.rows());
        blocks.push_back(std::move(block));
    }

    Transcript finish(const Library& library) const {
        FieldMatrix coeff(field, static_cast<std::size_t>(total), cols);
        std::size_t r0 = 0;
        for (const FieldMatrix& b : blocks) {
            coeff.add_block(r0, 0, b);
            r0 += b.rows();
        }
        FieldMatrix values = mat_mul(coeff, library.w);
        return {std::move(coeff), std::move(values), segments};
    }
};

/// Demand matrix with every column outside the given ranges zeroed.
FieldMatrix restrict_cols(const FieldMatrix& m, const std::vector<ColRange>& ranges) {
    FieldMatrix out(m.field(), m.rows(), m.cols());
    for (const ColRange& cr : ranges)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::int64_t c = cr.begin; c < cr.begin + cr.length; ++c)
                out.set(r, static_cast<std::size_t>(c), m(r, static_cast<std::size_t>(c)));
    return out;
}

void accumulate(FieldMatrix& dst, std::size_t row0, const FieldMatrix& src) {
    const PrimeField& f = dst.field();
    for (std::size_t r = 0; r < src.rows(); ++r)
        for (std::size_t c = 0; c < src.cols(); ++c)
            if (src(r, c) != 0)
                dst.set(row0 + r, c, f.add(dst(row0 + r, c), src(r, c)));
}

/// Coordinate-wise sum of equal-length subfiles: one row per position, a 1
/// in that position's column of every range.
FieldMatrix subfile_sums(const PrimeField& field, std::size_t cols,
                         const std::vector<ColRange>& ranges) {
    std::int64_t len = ranges.empty() ? 0 : ranges[0].length;
    FieldMatrix block(field, static_cast<std::size_t>(len), cols);
    for (const ColRange& cr : ranges)
        for (std::int64_t i = 0; i < len; ++i)
            block.set(static_cast<std::size_t>(i), static_cast<std::size_t>(cr.begin + i), 1);
    return block;
}

/// Stack of each class member's demand restricted to the class's subfile,
/// summed over classes; rows zero-padded to rows_per_user * max class size.
FieldMatrix stacked_block(const PrimeField& field, const SystemConfig& config,
                          const DemandSet& demands,
                          const std::vector<std::vector<int>>& classes,
                          const std::vector<ColRange>& ranges, std::size_t common,
                          std::size_t rows_per_user,
                          const std::vector<FieldMatrix>* rows_source,
                          std::size_t row_offset) {
    FieldMatrix block(field, common * rows_per_user,
                      static_cast<std::size_t>(config.symbols));
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (std::size_t p = 0; p < classes[i].size(); ++p) {
            int k = classes[i][p];
            if (rows_source) {
                accumulate(block, p * rows_per_user,
                           row_slice((*rows_source)[k - 1], row_offset, rows_per_user));
            } else {
                accumulate(block, p * rows_per_user,
                           restrict_cols(demands.matrices[k - 1], {ranges[i]}));
            }
        }
    }
    return block;
}

}  // namespace

std::vector<UserTransform> build_transforms(const SchemePlan& plan,
                                            const SystemConfig& config,
                                            const DemandSet& demands) {
    const PartitionLayout& lay = plan.layout;
    const std::int64_t s1 = part1_size(lay);
    const std::int64_t l = config.demand_rows;
    const std::int64_t top = std::min(s1, l);
    std::vector<UserTransform> out;
    out.reserve(static_cast<std::size_t>(config.users));
    for (int k = 1; k <= config.users; ++k) {
        const ColRange& miss = lay.part1[mod1(k, lay.g) - 1];
        FieldMatrix a = col_slice(demands.matrices[k - 1],
                                  static_cast<std::size_t>(miss.begin),
                                  static_cast<std::size_t>(miss.length));
        RrefResult rr = rref_with_transform(a);
        FieldMatrix t_inv = invert(rr.transform);
        out.push_back({std::move(rr.transform), std::move(t_inv), top, l - top});
    }
    return out;
}

namespace {

/// T_k applied to D_k with only the columns of user k's two missing
/// subfiles kept; rows past `top` then involve the part-2 subfile alone.
std::vector<FieldMatrix> transformed_demands(const SchemePlan& plan,
                                             const SystemConfig& config,
                                             const DemandSet& demands,
                                             const std::vector<UserTransform>& transforms) {
    const PartitionLayout& lay = plan.layout;
    std::vector<FieldMatrix> out;
    out.reserve(static_cast<std::size_t>(config.users));
    for (int k = 1; k <= config.users; ++k) {
        FieldMatrix masked = restrict_cols(demands.matrices[k - 1],
                                           {lay.part1[mod1(k, lay.g) - 1],
                                            lay.part2[mod1(k, lay.g + 1) - 1]});
        out.push_back(mat_mul(transforms[k - 1].t, masked));
    }
    return out;
}

Transcript deliver_baseline(const SchemePlan& plan, const SystemConfig& config,
                            const DemandSet& demands, const Library& library) {
    TranscriptBuilder tb{config.field(), static_cast<std::size_t>(config.symbols), {}, {}};
    if (plan.variant == SchemeVariant::baseline_unicast) {
        for (int k = 1; k <= config.users; ++k)
            tb.add("unicast:" + std::to_string(k), demands.matrices[k - 1]);
    } else {
        std::size_t remaining =
            static_cast<std::size_t>(config.symbols - config.cache_size);
        FieldMatrix block(tb.field, remaining, tb.cols);
        for (std::size_t r = 0; r < remaining; ++r)
            block.set(r, static_cast<std::size_t>(config.cache_size) + r, 1);
        tb.add("full-library", std::move(block));
    }
    return tb.finish(library);
}

Transcript deliver_corner(const SchemePlan& plan, const SystemConfig& config,
                          const DemandSet& demands, const Library& library) {
    const PartitionLayout& lay = plan.layout;
    const int g = lay.g;
    const std::int64_t sub = part1_size(lay);
    const std::size_t common = static_cast<std::size_t>(ceil_div(config.users, g));
    TranscriptBuilder tb{config.field(), static_cast<std::size_t>(config.symbols), {}, {}};
    if (sub > static_cast<std::int64_t>(common) * config.demand_rows) {
        tb.add("corner-multicast",
               stacked_block(tb.field, config, demands, mod_classes(config.users, g),
                             lay.part1, common,
                             static_cast<std::size_t>(config.demand_rows), nullptr, 0));
    } else {
        tb.add("corner-multicast", subfile_sums(tb.field, tb.cols, lay.part1));
    }
    return tb.finish(library);
}

Transcript deliver_rho1(const SchemePlan& plan, const SystemConfig& config,
                        const DemandSet& demands, const Library& library) {
    const PartitionLayout& lay = plan.layout;
    const std::int64_t s2 = part2_size(lay);
    const std::size_t common2 = static_cast<std::size_t>(ceil_div(config.users, lay.g + 1));
    TranscriptBuilder tb{config.field(), static_cast<std::size_t>(config.symbols), {}, {}};
    tb.add("part1-multicast", subfile_sums(tb.field, tb.cols, lay.part1));
    if (s2 > 0) {
        if (static_cast<std::int64_t>(common2) * config.demand_rows < s2) {
            tb.add("virtual-step",
                   stacked_block(tb.field, config, demands,
                                 mod_classes(config.users, lay.g + 1), lay.part2, common2,
                                 static_cast<std::size_t>(config.demand_rows), nullptr, 0));
        } else {
            tb.add("virtual-step", subfile_sums(tb.field, tb.cols, lay.part2));
        }
    }
    return tb.finish(library);
}

Transcript deliver_rho2(const SchemePlan& plan, const SystemConfig& config,
                        const DemandSet& demands, const Library& library) {
    const PartitionLayout& lay = plan.layout;
    const int g = lay.g;
    const std::int64_t s2 = part2_size(lay);
    const std::int64_t l = config.demand_rows;
    const std::int64_t top = std::min(part1_size(lay), l);
    const std::int64_t bottom = l - top;
    std::vector<UserTransform> transforms = build_transforms(plan, config, demands);
    std::vector<FieldMatrix> bprime = transformed_demands(plan, config, demands, transforms);
    TranscriptBuilder tb{config.field(), static_cast<std::size_t>(config.symbols), {}, {}};
    if (top > 0) {
        for (int i = 1; i <= ceil_div(config.users, g); ++i) {
            FieldMatrix block(tb.field, static_cast<std::size_t>(top), tb.cols);
            for (int j = 1; j <= g; ++j) {
                int k = (i - 1) * g + j;
                if (k > config.users) break;
                accumulate(block, 0, row_slice(bprime[k - 1], 0, static_cast<std::size_t>(top)));
            }
            tb.add("rho2-step1:" + std::to_string(i), std::move(block));
        }
    }
    if (bottom > 0 && s2 > 0) {
        const std::size_t common2 =
            static_cast<std::size_t>(ceil_div(config.users, g + 1));
        if (static_cast<std::int64_t>(common2) * bottom < s2) {
            tb.add("rho2-step2",
                   stacked_block(tb.field, config, demands, mod_classes(config.users, g + 1),
                                 lay.part2, common2, static_cast<std::size_t>(bottom),
                                 &bprime, static_cast<std::size_t>(top)));
        } else {
            tb.add("rho2-step2", subfile_sums(tb.field, tb.cols, lay.part2));
        }
    }
    return tb.finish(library);
}

Transcript deliver_rho3(const SchemePlan& plan, const SystemConfig& config,
                        const DemandSet& demands, const Library& library) {
    const PartitionLayout& lay = plan.layout;
    const std::int64_t s1 = part1_size(lay);
    TranscriptBuilder tb{config.field(), static_cast<std::size_t>(config.symbols), {}, {}};
    if (s1 > 0) {
        if (s1 > config.demand_rows) {
            FieldMatrix block(tb.field, static_cast<std::size_t>(config.demand_rows), tb.cols);
            for (int k = 1; k <= config.users; ++k)
                accumulate(block, 0,
                           restrict_cols(demands.matrices[k - 1], {lay.part1[k - 1]}));
            tb.add("top-multicast", std::move(block));
        } else {
            tb.add("top-multicast", subfile_sums(tb.field, tb.cols, lay.part1));
        }
    }
    return tb.finish(library);
}

}  // namespace

Transcript deliver(const SchemePlan& plan, const SystemConfig& config,
                   const DemandSet& demands, const Library& library) {
    if (std::ssize(demands.matrices) != config.users)
        throw shape_error("one demand matrix per user required");
    switch (plan.variant) {
        case SchemeVariant::baseline_unicast:
        case SchemeVariant::baseline_full:
            return deliver_baseline(plan, config, demands, library);
        case SchemeVariant::corner_grouped:
            return deliver_corner(plan, config, demands, library);
        case SchemeVariant::rho1:
            return deliver_rho1(plan, config, demands, library);
        case SchemeVariant::rho2:
            return deliver_rho2(plan, config, demands, library);
        case SchemeVariant::rho3:
            return deliver_rho3(plan, config, demands, library);
    }
    throw config_error("unknown variant");
}

std::int64_t expected_length(const SchemePlan& plan, const SystemConfig& config) {
    const std::int64_t f = config.symbols;
    const std::int64_t m = config.cache_size;
    const std::int64_t l = config.demand_rows;
    const int users = config.users;
    const PartitionLayout& lay = plan.layout;
    switch (plan.variant) {
        case SchemeVariant::baseline_unicast:
            return users * l;
        case SchemeVariant::baseline_full:
            return f - m;
        case SchemeVariant::corner_grouped:
            return std::min<std::int64_t>(ceil_div(users, lay.g) * l, f / lay.g);
        case SchemeVariant::rho1:
            return part1_size(lay) +
                   std::min<std::int64_t>(ceil_div(users, lay.g + 1) * l, part2_size(lay));
        case SchemeVariant::rho2: {
            std::int64_t top = std::min(part1_size(lay), l);
            return ceil_div(users, lay.g) * top +
                   std::min<std::int64_t>(ceil_div(users, lay.g + 1) * (l - top),
                                          part2_size(lay));
        }
        case SchemeVariant::rho3:
            return std::min(f - m, l);
    }
    throw config_error("unknown variant");
}

DecodeContext make_decode_context(const SchemePlan& plan, const SystemConfig& config,
                                  const DemandSet& demands) {
    DecodeContext context{plan, {}, {}};
    if (plan.variant == SchemeVariant::rho2) {
        context.transforms = build_transforms(plan, config, demands);
        context.bprime = transformed_demands(plan, config, demands, context.transforms);
    }
    return context;
}

namespace {

struct Known {
    std::vector<Elem> value;
    std::vector<char> flag;
};

Known known_from_cache(const CacheContents::UserCache& cache, std::size_t cols) {
    Known kn{std::vector<Elem>(cols, 0), std::vector<char>(cols, 0)};
    for (std::size_t r = 0; r < cache.placement.rows(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (cache.placement(r, c) != 0) {
                kn.value[c] = cache.values(r, 0);
                kn.flag[c] = 1;
                break;
            }
    return kn;
}

const Segment& need_segment(const Transcript& transcript, const std::string& label,
                            std::int64_t length) {
    for (const Segment& s : transcript.segments)
        if (s.label == label) {
            if (s.length != length)
                throw decode_error("segment " + label + " has unexpected length");
            return s;
        }
    throw decode_error("transcript missing segment " + label);
}

std::vector<Elem> segment_values(const Transcript& transcript, const Segment& seg) {
    std::vector<Elem> v(static_cast<std::size_t>(seg.length));
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = transcript.values(static_cast<std::size_t>(seg.start) + i, 0);
    return v;
}

Elem known_at(const Known& kn, std::int64_t col) {
    if (!kn.flag[static_cast<std::size_t>(col)])
        throw decode_error("needed coordinate is not cached");
    return kn.value[static_cast<std::size_t>(col)];
}

/// rows [row0, row0+nrows) of m applied to the known coordinates.
FieldMatrix apply_rows(const FieldMatrix& m, std::size_t row0, std::size_t nrows,
                       const Known& kn) {
    const PrimeField& f = m.field();
    FieldMatrix out(f, nrows, 1);
    for (std::size_t r = 0; r < nrows; ++r) {
        Elem acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            Elem e = m(row0 + r, c);
            if (e == 0) continue;
            acc = f.mul_add(acc, e, known_at(kn, static_cast<std::int64_t>(c)));
        }
        out.set(r, 0, acc);
    }
    return out;
}

/// m restricted to the columns of `range`, applied to known coordinates.
FieldMatrix apply_range(const FieldMatrix& m, const ColRange& range, const Known& kn) {
    const PrimeField& f = m.field();
    FieldMatrix out(f, m.rows(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Elem acc = 0;
        for (std::int64_t c = range.begin; c < range.begin + range.length; ++c) {
            Elem e = m(r, static_cast<std::size_t>(c));
            if (e == 0) continue;
            acc = f.mul_add(acc, e, known_at(kn, c));
        }
        out.set(static_cast<std::size_t>(r), 0, acc);
    }
    return out;
}

/// Recover the coordinates of `ranges[skip-1]` from a subfile-sum segment by
/// subtracting the cached positions of every other range.
void recover_subfile(Known& kn, const PrimeField& field, const std::vector<Elem>& seg,
                     const std::vector<ColRange>& ranges, int skip) {
    const ColRange& target = ranges[static_cast<std::size_t>(skip - 1)];
    for (std::int64_t r = 0; r < target.length; ++r) {
        Elem v = seg[static_cast<std::size_t>(r)];
        for (std::size_t i = 0; i < ranges.size(); ++i) {
            if (static_cast<int>(i) == skip - 1) continue;
            v = field.sub(v, known_at(kn, ranges[i].begin + r));
        }
        kn.value[static_cast<std::size_t>(target.begin + r)] = v;
        kn.flag[static_cast<std::size_t>(target.begin + r)] = 1;
    }
}

int position_in(const std::vector<int>& members, int user) {
    for (std::size_t p = 0; p < members.size(); ++p)
        if (members[p] == user) return static_cast<int>(p);
    throw decode_error("user missing from its delivery class");
}

/// Strip the other classes' contributions from a stacked multicast segment,
/// leaving the target class's padded demand stack.
std::vector<Elem> strip_stacked(const PrimeField& field, std::vector<Elem> seg,
                                const std::vector<std::vector<int>>& classes,
                                std::size_t rows_per_user, int skip, const Known& kn,
                                const DemandSet& demands,
                                const std::vector<ColRange>& ranges,
                                const std::vector<FieldMatrix>* rows_source,
                                std::size_t row_offset) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (static_cast<int>(i) == skip - 1) continue;
        for (std::size_t p = 0; p < classes[i].size(); ++p) {
            int k = classes[i][p];
            FieldMatrix contrib =
                rows_source ? apply_rows((*rows_source)[k - 1], row_offset, rows_per_user, kn)
                            : apply_range(demands.matrices[k - 1], ranges[i], kn);
            for (std::size_t r = 0; r < rows_per_user; ++r)
                seg[p * rows_per_user + r] =
                    field.sub(seg[p * rows_per_user + r], contrib(r, 0));
        }
    }
    return seg;
}

FieldMatrix column_from(const PrimeField& field, const std::vector<Elem>& seg,
                        std::size_t begin, std::size_t len) {
    FieldMatrix out(field, len, 1);
    for (std::size_t r = 0; r < len; ++r) out.set(r, 0, seg[begin + r]);
    return out;
}

}  // namespace

FieldMatrix decode(int user, const DecodeContext& context, const SystemConfig& config,
                   const CacheContents& caches, const Transcript& transcript,
                   const DemandSet& demands) {
    if (user < 1 || user > config.users) throw domain_error("user index out of range");
    if (std::ssize(demands.matrices) != config.users ||
        std::ssize(caches.users) != config.users)
        throw shape_error("demands and caches must cover every user");
    const SchemePlan& plan = context.plan;
    const PartitionLayout& lay = plan.layout;
    const PrimeField field = config.field();
    const FieldMatrix& dk = demands.matrices[static_cast<std::size_t>(user - 1)];
    const std::int64_t f = config.symbols;
    const std::int64_t l = config.demand_rows;
    const std::size_t ln = static_cast<std::size_t>(l);
    const int users = config.users;

    if (plan.variant == SchemeVariant::baseline_unicast) {
        const Segment& seg = need_segment(transcript, "unicast:" + std::to_string(user), l);
        return column_from(field, segment_values(transcript, seg), 0, ln);
    }

    Known kn = known_from_cache(caches.users[static_cast<std::size_t>(user - 1)],
                                static_cast<std::size_t>(f));

    if (plan.variant == SchemeVariant::baseline_full) {
        if (config.cache_size < f) {
            const Segment& seg =
                need_segment(transcript, "full-library", f - config.cache_size);
            std::vector<Elem> seg_vals = segment_values(transcript, seg);
            for (std::size_t r = 0; r < seg_vals.size(); ++r) {
                kn.value[static_cast<std::size_t>(config.cache_size) + r] = seg_vals[r];
                kn.flag[static_cast<std::size_t>(config.cache_size) + r] = 1;
            }
        }
        return apply_rows(dk, 0, ln, kn);
    }

    if (plan.variant == SchemeVariant::corner_grouped) {
        const std::int64_t sub = part1_size(lay);
        const int common = ceil_div(users, lay.g);
        const int skip = mod1(user, lay.g);
        const bool stacked = sub > static_cast<std::int64_t>(common) * l;
        const Segment& seg =
            need_segment(transcript, "corner-multicast", stacked ? common * l : sub);
        std::vector<Elem> seg_vals = segment_values(transcript, seg);
        if (!stacked) {
            recover_subfile(kn, field, seg_vals, lay.part1, skip);
            return apply_rows(dk, 0, ln, kn);
        }
        auto classes = mod_classes(users, lay.g);
        seg_vals = strip_stacked(field, std::move(seg_vals), classes, ln, skip, kn,
                                 demands, lay.part1, nullptr, 0);
        int pos = position_in(classes[static_cast<std::size_t>(skip - 1)], user);
        FieldMatrix out =
            column_from(field, seg_vals, static_cast<std::size_t>(pos) * ln, ln);
        for (int i = 1; i <= lay.g; ++i)
            if (i != skip)
                out = mat_add(out, apply_range(dk, lay.part1[i - 1], kn));
        return out;
    }

    if (plan.variant == SchemeVariant::rho1) {
        const std::int64_t s1 = part1_size(lay);
        const std::int64_t s2 = part2_size(lay);
        const int skip1 = mod1(user, lay.g);
        const int skip2 = mod1(user, lay.g + 1);
        if (s1 > 0) {
            const Segment& seg = need_segment(transcript, "part1-multicast", s1);
            recover_subfile(kn, field, segment_values(transcript, seg), lay.part1, skip1);
        }
        if (s2 == 0) return apply_rows(dk, 0, ln, kn);
        const int common2 = ceil_div(users, lay.g + 1);
        const bool stacked = static_cast<std::int64_t>(common2) * l < s2;
        const Segment& seg =
            need_segment(transcript, "virtual-step", stacked ? common2 * l : s2);
        std::vector<Elem> seg_vals = segment_values(transcript, seg);
        if (!stacked) {
            recover_subfile(kn, field, seg_vals, lay.part2, skip2);
            return apply_rows(dk, 0, ln, kn);
        }
        auto classes = mod_classes(users, lay.g + 1);
        seg_vals = strip_stacked(field, std::move(seg_vals), classes, ln, skip2, kn,
                                 demands, lay.part2, nullptr, 0);
        int pos = position_in(classes[static_cast<std::size_t>(skip2 - 1)], user);
        FieldMatrix out =
            column_from(field, seg_vals, static_cast<std::size_t>(pos) * ln, ln);
        for (int i = 1; i <= lay.g; ++i)
            out = mat_add(out, apply_range(dk, lay.part1[i - 1], kn));
        for (int i = 1; i <= lay.g + 1; ++i)
            if (i != skip2)
                out = mat_add(out, apply_range(dk, lay.part2[i - 1], kn));
        return out;
    }

    if (plan.variant == SchemeVariant::rho2) {
        if (context.transforms.empty())
            throw decode_error("rho2 decode needs a context built for rho2");
        const std::int64_t s2 = part2_size(lay);
        const std::int64_t top = context.transforms[0].top_rows;
        const std::int64_t bottom = context.transforms[0].bottom_rows;
        const int skip1 = mod1(user, lay.g);
        const int skip2 = mod1(user, lay.g + 1);
        FieldMatrix bprime_k(field, ln, 1);
        if (top > 0) {
            int block = (user + lay.g - 1) / lay.g;
            const Segment& seg =
                need_segment(transcript, "rho2-step1:" + std::to_string(block), top);
            std::vector<Elem> seg_vals = segment_values(transcript, seg);
            for (int j : peers(user, lay.g, users)) {
                FieldMatrix contrib = apply_rows(context.bprime[j - 1], 0,
                                                 static_cast<std::size_t>(top), kn);
                for (std::size_t r = 0; r < static_cast<std::size_t>(top); ++r)
                    seg_vals[r] = field.sub(seg_vals[r], contrib(r, 0));
            }
            for (std::size_t r = 0; r < static_cast<std::size_t>(top); ++r)
                bprime_k.set(r, 0, seg_vals[r]);
        }
        if (bottom > 0 && s2 > 0) {
            const int common2 = ceil_div(users, lay.g + 1);
            const bool stacked = static_cast<std::int64_t>(common2) * bottom < s2;
            const Segment& seg = need_segment(transcript, "rho2-step2",
                                              stacked ? common2 * bottom : s2);
            std::vector<Elem> seg_vals = segment_values(transcript, seg);
            if (!stacked) {
                recover_subfile(kn, field, seg_vals, lay.part2, skip2);
                FieldMatrix own = apply_rows(context.bprime[user - 1],
                                             static_cast<std::size_t>(top),
                                             static_cast<std::size_t>(bottom), kn);
                for (std::size_t r = 0; r < static_cast<std::size_t>(bottom); ++r)
                    bprime_k.set(static_cast<std::size_t>(top) + r, 0, own(r, 0));
            } else {
                auto classes = mod_classes(users, lay.g + 1);
                seg_vals = strip_stacked(field, std::move(seg_vals), classes,
                                         static_cast<std::size_t>(bottom), skip2, kn,
                                         demands, lay.part2, &context.bprime,
                                         static_cast<std::size_t>(top));
                int pos = position_in(classes[static_cast<std::size_t>(skip2 - 1)], user);
                for (std::size_t r = 0; r < static_cast<std::size_t>(bottom); ++r)
                    bprime_k.set(static_cast<std::size_t>(top) + r, 0,
                                 seg_vals[static_cast<std::size_t>(pos * bottom) + r]);
            }
        }
        FieldMatrix out = mat_mul(context.transforms[user - 1].t_inv, bprime_k);
        for (int i = 1; i <= lay.g; ++i)
            if (i != skip1)
                out = mat_add(out, apply_range(dk, lay.part1[i - 1], kn));
        for (int i = 1; i <= lay.g + 1; ++i)
            if (i != skip2)
                out = mat_add(out, apply_range(dk, lay.part2[i - 1], kn));
        return out;
    }

    // rho3
    const std::int64_t s1 = part1_size(lay);
    if (s1 == 0) return apply_rows(dk, 0, ln, kn);
    const bool stacked = s1 > l;
    const Segment& seg = need_segment(transcript, "top-multicast", stacked ? l : s1);
    std::vector<Elem> seg_vals = segment_values(transcript, seg);
    if (!stacked) {
        recover_subfile(kn, field, seg_vals, lay.part1, user);
        return apply_rows(dk, 0, ln, kn);
    }
    for (int j = 1; j <= users; ++j) {
        if (j == user) continue;
        FieldMatrix contrib =
            apply_range(demands.matrices[j - 1], lay.part1[j - 1], kn);
        for (std::size_t r = 0; r < ln; ++r)
            seg_vals[r] = field.sub(seg_vals[r], contrib(r, 0));
    }
    FieldMatrix out = column_from(field, seg_vals, 0, ln);
    for (int j = 1; j <= users; ++j)
        if (j != user) out = mat_add(out, apply_range(dk, lay.part1[j - 1], kn));
    out = mat_add(out, apply_range(dk, lay.part2[0], kn));
    return out;
}

FieldMatrix decode(int user, const SchemePlan& plan, const SystemConfig& config,
                   const CacheContents& caches, const Transcript& transcript,
                   const DemandSet& demands) {
    return decode(user, make_decode_context(plan, config, demands), config, caches,
                  transcript, demands);
}

}  // namespace lfr
