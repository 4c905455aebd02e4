#include "paradigm/tagger.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "paradigm/format.h"
#include "paradigm/parallel.h"
#include "paradigm/random.h"

namespace paradigm {

namespace {

constexpr const char* kModelMagic = "paradigm-hmm";
constexpr int kModelVersion = 1;

void normalize_row(double* row, size_t n) {
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) sum += row[i];
    for (size_t i = 0; i < n; ++i) row[i] /= sum;
}

std::vector<size_t> symbols_by_type(const HmmModel& model, const Vocabulary& vocab) {
    std::vector<size_t> out(vocab.size());
    for (TypeId t = 0; t < vocab.size(); ++t) out[t] = model.symbol(vocab.word(t));
    return out;
}

// Scaled forward-backward for one sentence. Writes state posteriors for
// every token into `gamma` (len x K) and summed transition posteriors into
// `xi` (K x K). Returns the sentence log-likelihood.
double forward_backward(const HmmModel& m, const std::vector<size_t>& symbols, std::span<const TypeId> sentence,
                        double* gamma, double* xi) {
    const size_t K = m.states();
    const size_t T = sentence.size();
    std::vector<double> alpha(T * K), beta(T * K), scale(T);

    auto emit = [&](size_t k, size_t t) { return m.emission(k, symbols[sentence[t]]); };

    double log_likelihood = 0.0;
    for (size_t t = 0; t < T; ++t) {
        double total = 0.0;
        for (size_t k = 0; k < K; ++k) {
            double a;
            if (t == 0) {
                a = m.initial(k);
            } else {
                a = 0.0;
                for (size_t j = 0; j < K; ++j) a += alpha[(t - 1) * K + j] * m.transition(j, k);
            }
            alpha[t * K + k] = a * emit(k, t);
            total += alpha[t * K + k];
        }
        if (!(total > 0.0)) throw std::runtime_error("HMM assigns zero probability to a sentence");
        scale[t] = total;
        for (size_t k = 0; k < K; ++k) alpha[t * K + k] /= total;
        log_likelihood += std::log(total);
    }

    for (size_t k = 0; k < K; ++k) beta[(T - 1) * K + k] = 1.0;
    for (size_t t = T - 1; t-- > 0;) {
        for (size_t j = 0; j < K; ++j) {
            double b = 0.0;
            for (size_t k = 0; k < K; ++k) b += m.transition(j, k) * emit(k, t + 1) * beta[(t + 1) * K + k];
            beta[t * K + j] = b / scale[t + 1];
        }
    }

    for (size_t t = 0; t < T; ++t) {
        for (size_t k = 0; k < K; ++k) gamma[t * K + k] = alpha[t * K + k] * beta[t * K + k];
    }
    std::fill(xi, xi + K * K, 0.0);
    for (size_t t = 0; t + 1 < T; ++t) {
        for (size_t j = 0; j < K; ++j) {
            const double a = alpha[t * K + j] / scale[t + 1];
            for (size_t k = 0; k < K; ++k) {
                xi[j * K + k] += a * m.transition(j, k) * emit(k, t + 1) * beta[(t + 1) * K + k];
            }
        }
    }
    return log_likelihood;
}

std::vector<double> read_row(std::istream& in, size_t n) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("truncated HMM model");
    std::vector<double> row;
    row.reserve(n);
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
        while (p < end && *p == ' ') ++p;
        if (p == end) break;
        double v;
        auto r = std::from_chars(p, end, v);
        if (r.ec != std::errc()) throw std::runtime_error("bad number in HMM model");
        row.push_back(v);
        p = r.ptr;
    }
    if (row.size() != n) throw std::runtime_error("HMM model row has the wrong length");
    return row;
}

}  // namespace

HmmModel::HmmModel(size_t states, std::vector<Word> known_types)
    : states_(states), types_(std::move(known_types)) {
    if (states_ == 0 || states_ > std::numeric_limits<uint16_t>::max()) {
        throw std::invalid_argument("HMM state count out of range");
    }
    for (size_t i = 0; i < types_.size(); ++i) {
        if (!index_.emplace(types_[i], i).second) throw std::invalid_argument("duplicate HMM type");
    }
    initial_.assign(states_, 1.0 / static_cast<double>(states_));
    transition_.assign(states_ * states_, 1.0 / static_cast<double>(states_));
    emission_.assign(states_ * symbols(), 1.0 / static_cast<double>(symbols()));
}

size_t HmmModel::symbol(const Word& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? unk() : it->second;
}

double HmmModel::normalization_error() const {
    double worst = 0.0;
    auto check = [&](const double* row, size_t n) {
        double sum = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (!(row[i] >= 0.0)) worst = std::numeric_limits<double>::infinity();
            sum += row[i];
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    };
    check(initial_.data(), states_);
    for (size_t k = 0; k < states_; ++k) {
        check(&transition_[k * states_], states_);
        check(&emission_[k * symbols()], symbols());
    }
    return worst;
}

void HmmModel::save(std::ostream& out) const {
    out << kModelMagic << ' ' << kModelVersion << '\n';
    out << "states " << states_ << '\n';
    out << "types " << types_.size() << '\n';
    for (const auto& t : types_) out << unicode::encode(t) << '\n';
    auto write_row = [&](const double* row, size_t n) {
        for (size_t i = 0; i < n; ++i) out << (i ? " " : "") << format_double(row[i]);
        out << '\n';
    };
    write_row(initial_.data(), states_);
    for (size_t k = 0; k < states_; ++k) write_row(&transition_[k * states_], states_);
    for (size_t k = 0; k < states_; ++k) write_row(&emission_[k * symbols()], symbols());
}

HmmModel HmmModel::load(std::istream& in) {
    std::string line, word;
    int version = 0;
    size_t states = 0, types = 0;
    if (!std::getline(in, line) || !(std::istringstream(line) >> word >> version) || word != kModelMagic) {
        throw std::runtime_error("not an HMM model file");
    }
    if (version != kModelVersion) throw std::runtime_error("unsupported HMM model version");
    if (!std::getline(in, line) || !(std::istringstream(line) >> word >> states) || word != "states") {
        throw std::runtime_error("HMM model: missing state count");
    }
    if (!std::getline(in, line) || !(std::istringstream(line) >> word >> types) || word != "types") {
        throw std::runtime_error("HMM model: missing type count");
    }
    std::vector<Word> known;
    known.reserve(types);
    for (size_t i = 0; i < types; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("truncated HMM model");
        known.push_back(unicode::decode_or_throw(line));
    }
    HmmModel model(states, std::move(known));
    model.initial_ = read_row(in, states);
    for (size_t k = 0; k < states; ++k) {
        auto row = read_row(in, states);
        std::copy(row.begin(), row.end(), model.transition_.begin() + static_cast<ptrdiff_t>(k * states));
    }
    for (size_t k = 0; k < states; ++k) {
        auto row = read_row(in, model.symbols());
        std::copy(row.begin(), row.end(),
                  model.emission_.begin() + static_cast<ptrdiff_t>(k * model.symbols()));
    }
    return model;
}

HmmTraining train_hmm(const Corpus& corpus, const Vocabulary& vocab, const HmmSettings& settings) {
    if (settings.iterations < 1) throw std::invalid_argument("HMM training needs at least one iteration");
    if (corpus.size() < 2) throw std::invalid_argument("corpus too short to train a tagger");

    std::vector<Word> known;
    for (TypeId t = 0; t < vocab.size(); ++t) {
        if (vocab.count(t) >= settings.unk_threshold) known.push_back(vocab.word(t));
    }
    HmmTraining result{HmmModel(settings.states, std::move(known)), {}};
    HmmModel& model = result.model;
    const size_t K = model.states();
    const size_t S = model.symbols();

    Rng rng(settings.seed);
    auto randomize = [&](std::vector<double>& values, size_t row_len) {
        for (auto& v : values) v = 0.5 + rng.uniform();
        for (size_t r = 0; r < values.size(); r += row_len) normalize_row(&values[r], row_len);
    };
    randomize(model.initial_row(), K);
    randomize(model.transition_matrix(), K);
    randomize(model.emission_matrix(), S);

    const auto symbols = symbols_by_type(model, vocab);
    const size_t sentences = corpus.sentence_count();
    std::vector<double> gamma(corpus.size() * K);
    std::vector<double> xi(sentences * K * K);
    std::vector<double> sentence_ll(sentences);

    auto e_step = [&] {
        parallel_for(sentences, settings.workers, [&](size_t s) {
            sentence_ll[s] = forward_backward(model, symbols, corpus.sentence(s),
                                              &gamma[corpus.sentence_begin(s) * K], &xi[s * K * K]);
        });
        double total = 0.0;
        for (double ll : sentence_ll) total += ll;
        return total;
    };

    for (int iter = 0; iter < settings.iterations; ++iter) {
        result.log_likelihood.push_back(e_step());

        // Reductions run in corpus order, independent of the worker count.
        std::vector<double> init(K, 0.0), trans(K * K, 0.0), emit(K * S, 0.0);
        for (size_t s = 0; s < sentences; ++s) {
            const size_t begin = corpus.sentence_begin(s);
            for (size_t k = 0; k < K; ++k) init[k] += gamma[begin * K + k];
            for (size_t i = 0; i < K * K; ++i) trans[i] += xi[s * K * K + i];
        }
        for (size_t t = 0; t < corpus.size(); ++t) {
            const size_t sym = symbols[corpus.tokens[t]];
            for (size_t k = 0; k < K; ++k) emit[k * S + sym] += gamma[t * K + k];
        }

        // A row with no expected mass keeps its previous distribution.
        auto update = [](std::vector<double>& target, std::vector<double>& counts, size_t row_len) {
            for (size_t r = 0; r < counts.size(); r += row_len) {
                double sum = 0.0;
                for (size_t i = 0; i < row_len; ++i) sum += counts[r + i];
                if (!(sum > 0.0)) continue;
                for (size_t i = 0; i < row_len; ++i) target[r + i] = counts[r + i] / sum;
            }
        };
        update(model.initial_row(), init, K);
        update(model.transition_matrix(), trans, K);
        update(model.emission_matrix(), emit, S);

        if (model.normalization_error() > 1e-9) {
            throw std::logic_error("HMM distributions lost normalization during EM");
        }
    }
    result.log_likelihood.push_back(e_step());
    return result;
}

double corpus_log_likelihood(const HmmModel& model, const Corpus& corpus, const Vocabulary& vocab) {
    const auto symbols = symbols_by_type(model, vocab);
    const size_t K = model.states();
    double total = 0.0;
    for (size_t s = 0; s < corpus.sentence_count(); ++s) {
        auto sentence = corpus.sentence(s);
        std::vector<double> gamma(sentence.size() * K), xi(K * K);
        total += forward_backward(model, symbols, sentence, gamma.data(), xi.data());
    }
    return total;
}

TagSequence tag_corpus(const HmmModel& model, const Corpus& corpus, const Vocabulary& vocab, unsigned workers) {
    const auto symbols = symbols_by_type(model, vocab);
    const size_t K = model.states();
    TagSequence out;
    out.states = K;
    out.tags.assign(corpus.size(), 0);

    std::vector<double> log_trans(K * K);
    for (size_t j = 0; j < K; ++j) {
        for (size_t k = 0; k < K; ++k) log_trans[j * K + k] = std::log(model.transition(j, k));
    }

    parallel_for(corpus.sentence_count(), workers, [&](size_t s) {
        auto sentence = corpus.sentence(s);
        const size_t T = sentence.size();
        std::vector<double> score(T * K);
        std::vector<uint16_t> back(T * K, 0);
        for (size_t k = 0; k < K; ++k) {
            score[k] = std::log(model.initial(k)) + std::log(model.emission(k, symbols[sentence[0]]));
        }
        for (size_t t = 1; t < T; ++t) {
            for (size_t k = 0; k < K; ++k) {
                double best = -std::numeric_limits<double>::infinity();
                uint16_t arg = 0;
                for (size_t j = 0; j < K; ++j) {
                    const double v = score[(t - 1) * K + j] + log_trans[j * K + k];
                    if (v > best) {
                        best = v;
                        arg = static_cast<uint16_t>(j);
                    }
                }
                score[t * K + k] = best + std::log(model.emission(k, symbols[sentence[t]]));
                back[t * K + k] = arg;
            }
        }
        uint16_t state = 0;
        for (size_t k = 1; k < K; ++k) {
            if (score[(T - 1) * K + k] > score[(T - 1) * K + state]) state = static_cast<uint16_t>(k);
        }
        const size_t begin = corpus.sentence_begin(s);
        for (size_t t = T; t-- > 0;) {
            out.tags[begin + t] = state;
            if (t > 0) state = back[t * K + state];
        }
    });
    return out;
}

void write_tagged_corpus(const Corpus& corpus, const Vocabulary& vocab, const TagSequence& tags,
                         std::ostream& out) {
    for (size_t s = 0; s < corpus.sentence_count(); ++s) {
        if (s > 0) out << '\n';
        for (size_t t = corpus.sentence_begin(s); t < corpus.sentence_end(s); ++t) {
            out << unicode::encode(vocab.word(corpus.tokens[t])) << '\t' << tags.tags[t] << '\n';
        }
    }
}

}  // namespace paradigm
