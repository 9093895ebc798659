#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <tuple>
#include <vector>

#include "popstack/avoidance.hpp"
#include "popstack/characterize.hpp"
#include "popstack/pair_io.hpp"
#include "popstack/popstack.hpp"

namespace py = pybind11;
using namespace popstack;

namespace {

using Seq = std::vector<Entry>;
using Seqs = std::vector<Seq>;

Permutation perm(const Seq& s) { return Permutation(s); }
Seq seq(const Permutation& p) { return Seq(p.begin(), p.end()); }

Seqs seqs(const PatternSet& set) {
    Seqs out;
    out.reserve(set.size());
    for (const auto& p : set) out.push_back(seq(p));
    return out;
}

std::vector<Permutation> perms(const Seqs& s) {
    std::vector<Permutation> out;
    out.reserve(s.size());
    for (const auto& x : s) out.push_back(perm(x));
    return out;
}

AvoidancePair make_pair_from(const Seqs& f, const Seqs& g) { return AvoidancePair(perms(f), perms(g)); }

std::tuple<Seqs, Seqs> pair_tuple(const AvoidancePair& pair) {
    return {seqs(pair.forbidden), seqs(pair.saving)};
}

EnumerationLimits limits(unsigned jobs) {
    EnumerationLimits l = EnumerationLimits::from_env();
    l.jobs = jobs;
    return l;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Deterministic pop-stack sorting and 2-avoidance";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    // permutations
    m.def("reduce", [](const Seq& s) { return seq(reduce(std::span<const Entry>(s))); }, py::arg("seq"));
    m.def("parse", [](const std::string& text) { return seq(Permutation::parse(text)); }, py::arg("text"));
    m.def("is_order_isomorphic", [](const Seq& a, const Seq& b) { return is_order_isomorphic(perm(a), perm(b)); });
    m.def("contains", [](const Seq& pattern, const Seq& host) { return contains(perm(pattern), perm(host)); },
          py::arg("pattern"), py::arg("host"));
    m.def(
        "occurrences",
        [](const Seq& pattern, const Seq& host, const std::vector<std::size_t>& required) {
            std::vector<std::vector<std::size_t>> out;
            for (auto& o : occurrences(perm(pattern), perm(host), required)) out.push_back(std::move(o.indices));
            return out;
        },
        py::arg("pattern"), py::arg("host"), py::arg("required") = std::vector<std::size_t>{},
        "0-based index sets in lexicographic order");
    m.def("subpermutation_at", [](const Seq& host, const std::vector<std::size_t>& idx) {
        return seq(subpermutation_at(perm(host), idx));
    });
    m.def("inversions", [](const Seq& p) { return inversions(perm(p)); });

    // pop stack
    m.def("block_decompose", [](const Seq& p) { return block_decompose(perm(p)).blocks; });
    m.def("pop_pass", [](const Seq& p) { return seq(pop_pass(perm(p))); });
    m.def("pop_pass_k", [](const Seq& p, std::size_t k) { return seq(pop_pass_k(perm(p), k)); });
    m.def("is_k_sortable", [](const Seq& p, std::size_t k) { return is_k_sortable(perm(p), k); },
          py::arg("p"), py::arg("k"));
    m.def("min_passes", [](const Seq& p) { return min_passes(perm(p)); });
    m.def("far_apart_witness", [](const Seq& p, std::size_t k) { return far_apart_witness(perm(p), k); });
    m.def(
        "sort_trace",
        [](const Seq& p, std::optional<std::size_t> max_passes) {
            std::vector<std::tuple<Seq, Seqs, Seq>> out;
            for (const auto& pass : sort_trace(perm(p), max_passes).passes) {
                out.emplace_back(seq(pass.input), pass.blocks.blocks, seq(pass.output));
            }
            return out;
        },
        py::arg("p"), py::arg("max_passes") = std::nullopt);

    // avoidance
    m.def("avoids_all", [](const Seq& p, const Seqs& f) { return avoids_all(perm(p), make_pattern_set(perms(f))); });
    m.def("removebar", [](const std::string& b) { return seq(BarredPattern::parse(b).removebar()); });
    m.def("unbar", [](const std::string& b) { return seq(BarredPattern::parse(b).unbar()); });
    m.def("barred_avoids", [](const Seq& p, const std::string& b) {
        return barred_avoids(perm(p), BarredPattern::parse(b));
    });
    m.def(
        "two_contains",
        [](const Seq& p, const Seqs& f, const Seqs& g) -> std::optional<std::tuple<Seq, std::vector<std::size_t>>> {
            auto w = two_contains(perm(p), make_pair_from(f, g));
            if (!w) return std::nullopt;
            return std::make_tuple(seq(w->matched_pattern), w->gamma.indices);
        },
        py::arg("p"), py::arg("forbidden"), py::arg("saving"),
        "None, or (matched pattern, 0-based index set)");
    m.def("two_avoids", [](const Seq& p, const Seqs& f, const Seqs& g) { return two_avoids(perm(p), make_pair_from(f, g)); },
          py::arg("p"), py::arg("forbidden"), py::arg("saving"));

    // characterization
    m.def("bounds", [](const Seqs& prior, std::size_t k) {
        const auto b = bounds(make_pattern_set(perms(prior)), k);
        return std::make_tuple(b.f_max, b.omega1_len, b.c);
    });
    m.def("one_pass_pair", [] { return pair_tuple(one_pass_pair()); });
    m.def("two_pass_pair", [] { return pair_tuple(two_pass_pair()); });
    m.def("construct_omega1", [](std::size_t k, std::size_t cap, unsigned jobs) {
        return seqs(construct_omega1(k, cap, limits(jobs)));
    }, py::arg("k"), py::arg("cap"), py::arg("jobs") = 0);
    m.def("construct_omega2", [](std::size_t k, const Seqs& omega1, std::size_t cap, unsigned jobs) {
        return seqs(construct_omega2(k, make_pattern_set(perms(omega1)), cap, limits(jobs)));
    }, py::arg("k"), py::arg("omega1"), py::arg("cap"), py::arg("jobs") = 0);
    m.def("reduce_lemma_a", [](const Seqs& f, const Seqs& g) { return pair_tuple(reduce_lemma_A(make_pair_from(f, g))); });
    m.def("reduce_lemma_b", [](const Seqs& f, const Seqs& g) { return pair_tuple(reduce_lemma_B(make_pair_from(f, g))); });
    m.def("reduce_lemma_c", [](const Seqs& f, const Seqs& g) { return pair_tuple(reduce_lemma_C(make_pair_from(f, g))); });
    m.def(
        "reduce_pair",
        [](const Seqs& f, const Seqs& g, std::size_t check_bound, unsigned jobs) {
            ReduceOptions options;
            options.check_bound = check_bound;
            options.limits = limits(jobs);
            return pair_tuple(reduce_pair(make_pair_from(f, g), options));
        },
        py::arg("forbidden"), py::arg("saving"), py::arg("check_bound") = 0, py::arg("jobs") = 0);
    m.def(
        "verify_pair",
        [](const Seqs& f, const Seqs& g, std::size_t k, std::size_t n_max, unsigned jobs) {
            const auto report = verify_pair(make_pair_from(f, g), k, n_max, limits(jobs));
            py::list rows;
            for (const auto& row : report.rows) {
                py::dict d;
                d["n"] = row.n;
                d["av2_count"] = row.av2_count;
                d["sortable_count"] = row.sortable_count;
                d["mismatches"] = seqs(row.mismatches);
                rows.append(d);
            }
            return rows;
        },
        py::arg("forbidden"), py::arg("saving"), py::arg("k"), py::arg("n_max"), py::arg("jobs") = 0);
    m.def("count_sortable", [](std::size_t k, std::size_t n, unsigned jobs) { return count_sortable(k, n, limits(jobs)); },
          py::arg("k"), py::arg("n"), py::arg("jobs") = 0);
    m.def("count_av2", [](const Seqs& f, const Seqs& g, std::size_t n, unsigned jobs) {
        return count_av2(make_pair_from(f, g), n, limits(jobs));
    }, py::arg("forbidden"), py::arg("saving"), py::arg("n"), py::arg("jobs") = 0);

    // pair files
    m.def("parse_pair", [](const std::string& text) { return pair_tuple(parse_pair(text)); });
    m.def("format_pair", [](const Seqs& f, const Seqs& g) { return format_pair(make_pair_from(f, g)); });
}
