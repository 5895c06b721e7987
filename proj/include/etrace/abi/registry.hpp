// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string_view>

#include <etrace/abi/event_abi.hpp>

namespace etrace::abi {

class AbiRegistry {
  public:
    //! Adds `abi` under its signature hash. Re-registering an identical ABI is a no-op;
    //! a different ABI with the same hash throws ConflictError.
    AbiRegistry& register_event(const EventAbi& abi);

    //! Restricts which signature hashes may decode logs emitted by `contract`.
    AbiRegistry& restrict_scope(const Address& contract, std::set<Word> hashes);

    [[nodiscard]] const EventAbi* find(const Word& hash) const;
    //! Lookup used by `contract`'s logs: nullptr when the hash is unknown or out of scope.
    [[nodiscard]] const EventAbi* find_for(const Address& contract, const Word& hash) const;
    [[nodiscard]] const EventAbi* find_by_name(std::string_view name) const;

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::map<Word, EventAbi>& entries() const noexcept { return entries_; }

    //! Transfer, Approval, Swap, Sync, FlashLoan, Withdrawal and Deposit.
    static AbiRegistry builtin();

  private:
    std::map<Word, EventAbi> entries_;
    std::map<Address, std::set<Word>> scope_;
};

//! Free-function form of AbiRegistry::register_event with value semantics.
AbiRegistry register_event(AbiRegistry registry, const EventAbi& abi);

//! Loads a JSON list of {name, params[{name, type, indexed}]} entries into `registry`.
void load_abi_file(const std::filesystem::path& path, AbiRegistry& registry);

}  // namespace etrace::abi
