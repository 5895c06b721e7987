// Copyright 2026 The etrace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <etrace/common/bytes.hpp>
#include <etrace/event/trace.hpp>

namespace etrace::detect {

enum class AttackPatternKind { Reentrancy, IntegerOverflow, FlashLoanAttack, DoS };

inline constexpr std::array kAllKinds{AttackPatternKind::Reentrancy, AttackPatternKind::IntegerOverflow,
                                      AttackPatternKind::FlashLoanAttack, AttackPatternKind::DoS};

std::string_view to_string(AttackPatternKind kind);
std::optional<AttackPatternKind> kind_from_string(std::string_view name);
//! Human form, e.g. "Integer Overflow".
std::string_view display_name(AttackPatternKind kind);

struct DetectorConfig {
    //! Transfers at or above this value count as overflow evidence.
    U256 overflow_threshold{U256{1} << 250};
    std::size_t reentry_min_transfers{4};
    std::size_t reentry_min_reversals{2};
    //! Block gas limit at the time of the GovernMental incident.
    std::uint64_t dos_gas_limit{4'712'388};
    std::size_t dos_min_repeats{3};
    //! 0.01 ETH
    U256 dos_small_value_max{U256{10'000'000'000'000'000ULL}};

    //! Throws ConfigError when a threshold is zero or a minimum is below its floor.
    void validate() const;
};

struct Finding {
    AttackPatternKind kind{AttackPatternKind::Reentrancy};
    std::vector<std::size_t> evidence;  // ascending trace indices, never empty
    double score{0.0};                  // [0, 1]
    std::string explanation;

    bool operator==(const Finding&) const = default;
};

//! Alternating Transfer loops between one address pair.
std::vector<Finding> detect_reentrancy(const event::EventTrace& trace, const DetectorConfig& cfg);
//! Transfers carrying values at or above the threshold; one finding per distinct value.
std::vector<Finding> detect_integer_overflow(const event::EventTrace& trace, const DetectorConfig& cfg);
//! FlashLoan (or Borrow), then Swaps, then a Withdrawal or a Transfer back to the lender.
std::vector<Finding> detect_flash_loan(const event::EventTrace& trace, const DetectorConfig& cfg);
//! Repeated cheap calls with growing gas, or any event above the gas limit.
std::vector<Finding> detect_dos(const event::EventTrace& trace, const DetectorConfig& cfg);

//! All four detectors, ordered by (first evidence index, kind).
std::vector<Finding> run_all_detectors(const event::EventTrace& trace, const DetectorConfig& cfg);

}  // namespace etrace::detect
