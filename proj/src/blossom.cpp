// Copyright 2026 The tcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tcd/matcher.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcd {

namespace {

class Blossom {
public:
    Blossom(size_t nv, const std::vector<WeightedEdge> &edges, bool maxcard)
        : nv_(nv), edges_(edges), maxcard_(maxcard) {}

    std::vector<int64_t> run() {
        const size_t nedge = edges_.size();
        int64_t maxweight = 0;
        for (const auto &e : edges_) maxweight = std::max(maxweight, e.w);
        endpoint_.resize(2 * nedge);
        for (size_t p = 0; p < 2 * nedge; p++) endpoint_[p] = p % 2 ? edges_[p / 2].v : edges_[p / 2].u;
        neighbend_.assign(nv_, {});
        for (size_t k = 0; k < nedge; k++) {
            neighbend_[edges_[k].u].push_back(2 * k + 1);
            neighbend_[edges_[k].v].push_back(2 * k);
        }
        mate_.assign(nv_, -1);
        label_.assign(2 * nv_, 0);
        labelend_.assign(2 * nv_, -1);
        inblossom_.resize(nv_);
        for (size_t i = 0; i < nv_; i++) inblossom_[i] = (int64_t)i;
        blossomparent_.assign(2 * nv_, -1);
        blossomchilds_.assign(2 * nv_, {});
        blossombase_.assign(2 * nv_, -1);
        for (size_t i = 0; i < nv_; i++) blossombase_[i] = (int64_t)i;
        blossomendps_.assign(2 * nv_, {});
        bestedge_.assign(2 * nv_, -1);
        blossombestedges_.assign(2 * nv_, {});
        hasbest_.assign(2 * nv_, false);
        for (size_t i = nv_; i < 2 * nv_; i++) unused_.push_back((int64_t)i);
        dualvar_.assign(2 * nv_, 0);
        for (size_t i = 0; i < nv_; i++) dualvar_[i] = maxweight;
        allowedge_.assign(nedge, false);

        for (size_t t = 0; t < nv_; t++) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (size_t b = nv_; b < 2 * nv_; b++) {
                blossombestedges_[b].clear();
                hasbest_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();
            for (size_t v = 0; v < nv_; v++) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label((int64_t)v, 1, -1);
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int64_t v = queue_.back();
                    queue_.pop_back();
                    for (int64_t p : neighbend_[v]) {
                        int64_t k = p / 2;
                        int64_t w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) continue;
                        int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge_[k] = true;
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int64_t base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int64_t b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                        }
                    }
                }
                if (augmented) break;
                int deltatype = -1;
                int64_t delta = 0, deltaedge = -1, deltablossom = -1;
                if (!maxcard_) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_);
                }
                for (size_t v = 0; v < nv_; v++) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        int64_t d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (size_t b = 0; b < 2 * nv_; b++) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        int64_t ks = slack(bestedge_[b]);
                        if (ks % 2 != 0) throw std::logic_error("blossom: odd slack");
                        int64_t d = ks / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (size_t b = nv_; b < 2 * nv_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = (int64_t)b;
                    }
                }
                if (deltatype == -1) {
                    deltatype = 1;
                    delta = std::max<int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_));
                }
                for (size_t v = 0; v < nv_; v++) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (size_t b = nv_; b < 2 * nv_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int64_t i = edges_[deltaedge].u, j = edges_[deltaedge].v;
                    if (label_[inblossom_[i]] == 0) std::swap(i, j);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    queue_.push_back(edges_[deltaedge].u);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (size_t b = nv_; b < 2 * nv_; b++) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                    expand_blossom((int64_t)b, true);
                }
            }
        }
        std::vector<int64_t> out(nv_, -1);
        for (size_t v = 0; v < nv_; v++) {
            if (mate_[v] >= 0) out[v] = endpoint_[mate_[v]];
        }
        return out;
    }

private:
    int64_t slack(int64_t k) const {
        const auto &e = edges_[k];
        return dualvar_[e.u] + dualvar_[e.v] - 2 * e.w;
    }

    void leaves(int64_t b, std::vector<int64_t> &out) const {
        if (b < (int64_t)nv_) {
            out.push_back(b);
            return;
        }
        for (int64_t t : blossomchilds_[b]) leaves(t, out);
    }

    std::vector<int64_t> leaves(int64_t b) const {
        std::vector<int64_t> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int64_t w, int t, int64_t p) {
        int64_t b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            int64_t base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int64_t scan_blossom(int64_t v, int64_t w) {
        std::vector<int64_t> path;
        int64_t base = -1;
        while (v != -1 || w != -1) {
            int64_t b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int64_t b : path) label_[b] = 1;
        return base;
    }

    void add_blossom(int64_t base, int64_t k) {
        int64_t v = edges_[k].u, w = edges_[k].v;
        int64_t bb = inblossom_[base], bv = inblossom_[v], bw = inblossom_[w];
        int64_t b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        std::vector<int64_t> path, endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        for (int64_t leaf : leaves(b)) {
            if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
            inblossom_[leaf] = b;
        }
        std::vector<int64_t> bestedgeto(2 * nv_, -1);
        for (int64_t sub : path) {
            std::vector<int64_t> nblist;
            if (!hasbest_[sub]) {
                for (int64_t leaf : leaves(sub)) {
                    for (int64_t p : neighbend_[leaf]) nblist.push_back(p / 2);
                }
            } else {
                nblist = blossombestedges_[sub];
            }
            for (int64_t kk : nblist) {
                int64_t i = edges_[kk].u, j = edges_[kk].v;
                if (inblossom_[j] == b) std::swap(i, j);
                int64_t bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                    bestedgeto[bj] = kk;
                }
            }
            blossombestedges_[sub].clear();
            hasbest_[sub] = false;
            bestedge_[sub] = -1;
        }
        blossombestedges_[b].clear();
        for (int64_t kk : bestedgeto) {
            if (kk != -1) blossombestedges_[b].push_back(kk);
        }
        hasbest_[b] = true;
        bestedge_[b] = -1;
        for (int64_t kk : blossombestedges_[b]) {
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
        }
    }

    void expand_blossom(int64_t b, bool endstage) {
        for (int64_t s : blossomchilds_[b]) {
            blossomparent_[s] = -1;
            if (s < (int64_t)nv_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int64_t leaf : leaves(s)) inblossom_[leaf] = s;
            }
        }
        if (!endstage && label_[b] == 2) {
            auto &childs = blossomchilds_[b];
            auto &endps = blossomendps_[b];
            const int64_t n = (int64_t)childs.size();
            auto at = [n](const std::vector<int64_t> &v, int64_t j) { return v[((j % n) + n) % n]; };
            int64_t entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int64_t j = std::find(childs.begin(), childs.end(), entrychild) - childs.begin();
            int64_t jstep, endptrick;
            if (j & 1) {
                j -= n;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int64_t p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[at(endps, j - endptrick) / 2] = true;
                j += jstep;
                p = at(endps, j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            int64_t bv = at(childs, j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (at(childs, j) != entrychild) {
                bv = at(childs, j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int64_t found = -1;
                for (int64_t leaf : leaves(bv)) {
                    if (label_[leaf] != 0) {
                        found = leaf;
                        break;
                    }
                }
                if (found >= 0) {
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        hasbest_[b] = false;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int64_t b, int64_t v) {
        int64_t t = v;
        while (blossomparent_[t] != b) t = blossomparent_[t];
        if (t >= (int64_t)nv_) augment_blossom(t, v);
        auto &childs = blossomchilds_[b];
        auto &endps = blossomendps_[b];
        const int64_t n = (int64_t)childs.size();
        auto at = [n](const std::vector<int64_t> &vec, int64_t j) { return vec[((j % n) + n) % n]; };
        int64_t i = std::find(childs.begin(), childs.end(), t) - childs.begin();
        int64_t j = i, jstep, endptrick;
        if (i & 1) {
            j -= n;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = at(childs, j);
            int64_t p = at(endps, j - endptrick) ^ endptrick;
            if (t >= (int64_t)nv_) augment_blossom(t, endpoint_[p]);
            j += jstep;
            t = at(childs, j);
            if (t >= (int64_t)nv_) augment_blossom(t, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
    }

    void augment_matching(int64_t k) {
        int64_t v = edges_[k].u, w = edges_[k].v;
        for (auto [s, p] : {std::pair<int64_t, int64_t>{v, 2 * k + 1}, {w, 2 * k}}) {
            while (true) {
                int64_t bs = inblossom_[s];
                if (bs >= (int64_t)nv_) augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1) break;
                int64_t t = endpoint_[labelend_[bs]];
                int64_t bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int64_t j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= (int64_t)nv_) augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    size_t nv_;
    const std::vector<WeightedEdge> &edges_;
    bool maxcard_;
    std::vector<int64_t> endpoint_;
    std::vector<std::vector<int64_t>> neighbend_;
    std::vector<int64_t> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_, dualvar_;
    std::vector<std::vector<int64_t>> blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<bool> hasbest_, allowedge_;
    std::vector<int64_t> unused_, queue_;
};

}  // namespace

std::vector<int64_t> max_weight_matching(size_t num_vertices, const std::vector<WeightedEdge> &edges,
                                         bool max_cardinality) {
    if (edges.empty()) return std::vector<int64_t>(num_vertices, -1);
    for (const auto &e : edges) {
        if (e.u >= num_vertices || e.v >= num_vertices || e.u == e.v) {
            throw std::invalid_argument("max_weight_matching: bad edge");
        }
    }
    return Blossom(num_vertices, edges, max_cardinality).run();
}

}  // namespace tcd
