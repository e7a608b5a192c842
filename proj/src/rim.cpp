#include <map>

#include "isocycles/hilbert.hpp"
#include "isocycles/ssgraph.hpp"

namespace isocycles {

namespace {

class Threader
{
    IsogenyGraph const & graph_;
    std::size_t length_;
    std::map<std::size_t, int> remaining_;
    std::vector<RimCycle> cycles_;
    std::vector<std::size_t> path_;

    // Step prev -> v -> next reverses an edge unless a second v -> prev edge exists.
    bool turn_ok(std::size_t prev, std::size_t v, std::size_t next) const
    {
        return prev != next || graph_.multiplicity(v, prev) >= 2;
    }

    bool close_ok() const
    {
        std::size_t first = path_.front(), last = path_.back();
        if (graph_.multiplicity(last, first) == 0)
            return false;
        if (length_ == 1)
            return true;
        return turn_ok(last, first, path_[1]) && turn_ok(path_[length_ - 2], last, first);
    }

    bool extend()
    {
        if (path_.size() == length_) {
            if (!close_ok())
                return false;
            cycles_.push_back({path_});
            std::vector<std::size_t> saved = std::move(path_);
            path_.clear();
            if (decompose())
                return true;
            path_ = std::move(saved);
            cycles_.pop_back();
            return false;
        }
        std::size_t last = path_.back();
        for (auto const & nb : graph_.adjacency()[last]) {
            auto it = remaining_.find(nb.target);
            if (it == remaining_.end() || it->second == 0)
                continue;
            if (path_.size() >= 2 && !turn_ok(path_[path_.size() - 2], last, nb.target))
                continue;
            --it->second;
            path_.push_back(nb.target);
            if (extend())
                return true;
            path_.pop_back();
            ++it->second;
        }
        return false;
    }

  public:
    Threader(IsogenyGraph const & graph, std::size_t length, std::map<std::size_t, int> counts)
        : graph_(graph), length_(length), remaining_(std::move(counts))
    {
    }

    bool decompose()
    {
        auto start = remaining_.begin();
        while (start != remaining_.end() && start->second == 0)
            ++start;
        if (start == remaining_.end())
            return true;
        --start->second;
        path_.push_back(start->first);
        if (extend())
            return true;
        path_.pop_back();
        ++start->second;
        return false;
    }

    std::vector<RimCycle> const & cycles() const { return cycles_; }
};

}  // namespace

std::vector<RimCycle> locate_rim_vertices(Discriminant const & D, IsogenyGraph const & graph)
{
    std::int64_t ell = graph.ell();
    std::optional<BinaryQuadraticForm> above;
    try {
        above = prime_form(D, ell);
    }
    catch (std::invalid_argument const & e) {
        throw RimLocationError(std::string("locate: ") + e.what());
    }
    if (!above || splitting_type(D, ell) != SplittingType::split)
        throw RimLocationError("locate: " + std::to_string(ell) + " does not split in the order of discriminant " +
                               std::to_string(D.value()));
    std::size_t length = static_cast<std::size_t>(form_order(D, *above));

    std::map<std::size_t, int> counts;
    int total = 0;
    for (auto const & r : poly_roots(hilbert_mod_p(D, graph.field()))) {
        auto idx = graph.index_of(r.value);
        if (!idx)
            throw RimLocationError("locate: root " + r.value.to_string() + " of H_D mod p is not a graph vertex");
        counts[*idx] += r.multiplicity;
        total += r.multiplicity;
    }
    if (total != class_number(D))
        throw RimLocationError("locate: H_D mod p does not split over F_{p^2}");
    if (total % static_cast<int>(length) != 0)
        throw RimLocationError("locate: class number is not a multiple of the cycle length");

    Threader threader(graph, length, std::move(counts));
    if (!threader.decompose())
        throw RimLocationError("locate: no consistent threading of the roots of H_D into cycles of length " +
                               std::to_string(length));
    return threader.cycles();
}

}  // namespace isocycles
