// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#include <etrace/abi/codec.hpp>

#include <algorithm>

#include <etrace/common/errors.hpp>

namespace etrace::abi {

namespace {

    std::string layout(const EventAbi& abi) {
        std::string out = abi.canonical_signature() + " [";
        for (std::size_t i = 0; i < abi.params().size(); ++i) {
            const auto& p = abi.params()[i];
            if (i) out += ", ";
            out += p.type.canonical() + (p.indexed ? " indexed " : " ") + p.name;
        }
        return out + "]";
    }

    bool fits(const U256& v, unsigned bits) {
        return bits >= 256 || (v >> bits) == 0;
    }

    AbiValue decode_word(const Word& w, const EventParam& p, const EventAbi& abi) {
        switch (p.type.kind) {
            case SolKind::address:
                return word_to_address(w);
            case SolKind::bytes32:
                return w;
            case SolKind::boolean: {
                const U256 v = word_to_u256(w);
                if (v > 1) throw DecodeError(abi.name() + "." + p.name + ": bool word is neither 0 nor 1");
                return v == 1;
            }
            case SolKind::uint: {
                U256 v = word_to_u256(w);
                if (!fits(v, p.type.bits)) {
                    throw DecodeError(abi.name() + "." + p.name + ": value does not fit " + p.type.canonical());
                }
                return v;
            }
        }
        throw DecodeError("unreachable parameter kind");
    }

    Word encode_value(const AbiValue& value, const EventParam& p, const EventAbi& abi) {
        const auto mismatch = [&] {
            return DecodeError(abi.name() + "." + p.name + ": value is not a " + p.type.canonical());
        };
        switch (p.type.kind) {
            case SolKind::address:
                if (auto a = std::get_if<Address>(&value)) return to_word(*a);
                throw mismatch();
            case SolKind::bytes32:
                if (auto w = std::get_if<Word>(&value)) return *w;
                throw mismatch();
            case SolKind::boolean:
                if (auto b = std::get_if<bool>(&value)) return to_word(U256{*b ? 1 : 0});
                throw mismatch();
            case SolKind::uint:
                if (auto u = std::get_if<U256>(&value)) {
                    if (!fits(*u, p.type.bits)) {
                        throw DecodeError(abi.name() + "." + p.name + ": value does not fit " + p.type.canonical());
                    }
                    return to_word(*u);
                }
                throw mismatch();
        }
        throw mismatch();
    }

    bool names_match(const EventAbi& abi, const DecodedParams& params) {
        return abi.params().size() == params.values.size() &&
               std::equal(abi.params().begin(), abi.params().end(), params.values.begin(),
                          [](const EventParam& p, const auto& v) { return p.name == v.first; });
    }

}  // namespace

DecodeResult decode_log(const ingestion::LogEntry& entry, const AbiRegistry& registry) {
    if (entry.topics.empty()) return UnknownEvent{entry};
    const EventAbi* abi = registry.find_for(entry.address, entry.topics.front());
    if (abi == nullptr) return UnknownEvent{entry};

    const std::size_t want_topics = 1 + abi->indexed_count();
    const std::size_t want_data = (abi->params().size() - abi->indexed_count()) * kWordSize;
    if (entry.topics.size() != want_topics || entry.data.size() != want_data) {
        throw DecodeError("cannot decode " + abi->name() + ": expected " + std::to_string(want_topics) +
                          " topics and " + std::to_string(want_data) + " data bytes for " + layout(*abi) + ", got " +
                          std::to_string(entry.topics.size()) + " topics and " + std::to_string(entry.data.size()) +
                          " data bytes");
    }

    DecodedLog out{abi->name(), {}};
    out.params.values.reserve(abi->params().size());
    std::size_t topic = 1;
    std::size_t offset = 0;
    for (const auto& p : abi->params()) {
        Word w;
        if (p.indexed) {
            w = entry.topics[topic++];
        } else {
            w = Word::from_span(ByteView{entry.data}.subspan(offset, kWordSize));
            offset += kWordSize;
        }
        out.params.values.emplace_back(p.name, decode_word(w, p, *abi));
    }
    return out;
}

ingestion::LogEntry encode_log(std::string_view name, const DecodedParams& params, const AbiRegistry& registry,
                               const Address& emitter, std::uint64_t log_index) {
    const EventAbi* abi = nullptr;
    for (const auto& [hash, candidate] : registry.entries()) {
        if (candidate.name() == name && names_match(candidate, params)) {
            abi = &candidate;
            break;
        }
    }
    if (abi == nullptr) {
        if (registry.find_by_name(name) == nullptr) {
            throw DecodeError("no registered event named " + std::string{name});
        }
        throw DecodeError("params do not match any registered layout of " + std::string{name});
    }

    ingestion::LogEntry log;
    log.address = emitter;
    log.log_index = log_index;
    log.topics.push_back(abi->signature_hash());
    for (std::size_t i = 0; i < abi->params().size(); ++i) {
        const auto& p = abi->params()[i];
        const Word w = encode_value(params.values[i].second, p, *abi);
        if (p.indexed) {
            log.topics.push_back(w);
        } else {
            log.data.insert(log.data.end(), w.bytes.begin(), w.bytes.end());
        }
    }
    return log;
}

}  // namespace etrace::abi
