// Straight-line reference versions of the extraction kernels. They share only
// the scoring and id helpers with the parallel code.
#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "cognate/extraction.hpp"
#include "cognate/similarity.hpp"
#include "extraction_detail.hpp"

namespace cognate::serial {

std::vector<ScoredPair> generate_cognate_candidates(const LinkedWordnet& wn, Language source,
                                                    Language target, const ExtractionOptions& options) {
    detail::validate(wn, source, target, options);
    std::map<std::tuple<SynsetId, std::string, std::string>, ScoredPair> emitted;
    for (const auto& [id, src] : wn.table(source)) {
        const Synset* tgt = wn.find(target, id);
        if (!tgt || tgt->pos != src.pos) continue;
        for (const auto& a : src.lemmas) {
            if (!options.include_multiword && is_multiword(a)) continue;
            for (const auto& b : tgt->lemmas) {
                if (!options.include_multiword && is_multiword(b)) continue;
                ScoredPair pair;
                pair.source_word = normalize_script(a, source, options.normalize);
                pair.target_word = normalize_script(b, target, options.normalize);
                pair.synset_src = pair.synset_tgt = id;
                score_pair(pair, options);
                bool by_ned = *pair.ned >= options.threshold;
                bool by_cosine = *pair.cosine >= options.threshold;
                if (!(by_ned && by_cosine)) continue;
                pair.pair_id = make_pair_id({source, target}, a, b, id, id);
                emitted.try_emplace({id, a, b}, std::move(pair));
            }
        }
    }
    std::vector<ScoredPair> out;
    out.reserve(emitted.size());
    for (auto& [key, pair] : emitted) out.push_back(std::move(pair));
    return out;
}

std::vector<ScoredPair> generate_false_friend_candidates(const LinkedWordnet& wn, Language source,
                                                         Language target, const ExtractionOptions& options) {
    detail::validate(wn, source, target, options);
    struct Occurrence {
        std::set<SynsetId> ids;
        std::map<SynsetId, std::string> first_lemma;
    };
    auto collect = [&](Language lang) {
        std::map<std::u32string, Occurrence> by_spelling;
        for (const auto& [id, synset] : wn.table(lang)) {
            for (const auto& lemma : synset.lemmas) {
                if (!options.include_multiword && is_multiword(lemma)) continue;
                auto& occ = by_spelling[normalize_script(lemma, lang, options.normalize).canonical];
                occ.ids.insert(id);
                occ.first_lemma.try_emplace(id, lemma);
            }
        }
        return by_spelling;
    };
    auto src = collect(source);
    auto tgt = collect(target);

    std::vector<ScoredPair> out;
    for (const auto& [spelling, p] : src) {
        auto it = tgt.find(spelling);
        if (it == tgt.end()) continue;
        const auto& q = it->second;
        std::vector<SynsetId> common;
        std::set_intersection(p.ids.begin(), p.ids.end(), q.ids.begin(), q.ids.end(),
                              std::back_inserter(common));
        if (!common.empty()) continue;
        for (auto ps : p.ids) {
            for (auto qs : q.ids) {
                ScoredPair pair;
                pair.source_word = normalize_script(p.first_lemma.at(ps), source, options.normalize);
                pair.target_word = normalize_script(q.first_lemma.at(qs), target, options.normalize);
                pair.synset_src = ps;
                pair.synset_tgt = qs;
                score_pair(pair, options);
                pair.pair_id = make_pair_id({source, target}, pair.source_word.original,
                                            pair.target_word.original, ps, qs);
                out.push_back(std::move(pair));
            }
        }
    }
    std::sort(out.begin(), out.end(), detail::false_friend_order);
    return out;
}

}  // namespace cognate::serial
