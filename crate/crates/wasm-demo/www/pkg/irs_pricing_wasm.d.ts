/* tslint:disable */
/* eslint-disable */

export class GameReport {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly active_modules: number;
    /**
     * Per-module norm of the deployed reflection profile.
     */
    readonly block_norms: Float64Array;
    readonly converged: boolean;
    readonly direct_rate: number;
    /**
     * Price at every outer iteration.
     */
    readonly price_trace: Float64Array;
    readonly r_star: number;
    readonly sum_rate: number;
    readonly u: number;
    readonly v: number;
}

export class PriceResponse {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly active: Uint32Array;
    readonly prices: Float64Array;
    readonly sum_rate: Float64Array;
    readonly u: Float64Array;
    readonly v: Float64Array;
}

export class RevenueCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly active: number;
    readonly prices: Float64Array;
    readonly r_star: number;
    readonly v_star: number;
    readonly values: Float64Array;
}

/**
 * Instance description shared by the solver entry points.
 */
export class Scenario {
    free(): void;
    [Symbol.dispose](): void;
    constructor(m: number, k: number, s: number, n: number, seed: bigint, p_max_dbm: number, delta: number);
    delta: number;
    k: number;
    m: number;
    n: number;
    p_max_dbm: number;
    s: number;
    seed: bigint;
}

export function price_response(scenario: Scenario, r_lo: number, r_hi: number, points: number): PriceResponse;

export function revenue_curve(norms: Float64Array, delta: number, c: number, points: number): RevenueCurve;

export function solve(scenario: Scenario): GameReport;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_gamereport_free: (a: number, b: number) => void;
    readonly __wbg_get_scenario_delta: (a: number) => number;
    readonly __wbg_get_scenario_k: (a: number) => number;
    readonly __wbg_get_scenario_m: (a: number) => number;
    readonly __wbg_get_scenario_n: (a: number) => number;
    readonly __wbg_get_scenario_p_max_dbm: (a: number) => number;
    readonly __wbg_get_scenario_s: (a: number) => number;
    readonly __wbg_get_scenario_seed: (a: number) => bigint;
    readonly __wbg_priceresponse_free: (a: number, b: number) => void;
    readonly __wbg_revenuecurve_free: (a: number, b: number) => void;
    readonly __wbg_scenario_free: (a: number, b: number) => void;
    readonly __wbg_set_scenario_delta: (a: number, b: number) => void;
    readonly __wbg_set_scenario_k: (a: number, b: number) => void;
    readonly __wbg_set_scenario_m: (a: number, b: number) => void;
    readonly __wbg_set_scenario_n: (a: number, b: number) => void;
    readonly __wbg_set_scenario_p_max_dbm: (a: number, b: number) => void;
    readonly __wbg_set_scenario_s: (a: number, b: number) => void;
    readonly __wbg_set_scenario_seed: (a: number, b: bigint) => void;
    readonly gamereport_active_modules: (a: number) => number;
    readonly gamereport_block_norms: (a: number) => [number, number];
    readonly gamereport_converged: (a: number) => number;
    readonly gamereport_direct_rate: (a: number) => number;
    readonly gamereport_price_trace: (a: number) => [number, number];
    readonly gamereport_r_star: (a: number) => number;
    readonly gamereport_sum_rate: (a: number) => number;
    readonly gamereport_u: (a: number) => number;
    readonly gamereport_v: (a: number) => number;
    readonly price_response: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly priceresponse_active: (a: number) => [number, number];
    readonly priceresponse_prices: (a: number) => [number, number];
    readonly priceresponse_sum_rate: (a: number) => [number, number];
    readonly priceresponse_u: (a: number) => [number, number];
    readonly priceresponse_v: (a: number) => [number, number];
    readonly revenue_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly revenuecurve_active: (a: number) => number;
    readonly revenuecurve_prices: (a: number) => [number, number];
    readonly revenuecurve_r_star: (a: number) => number;
    readonly revenuecurve_v_star: (a: number) => number;
    readonly revenuecurve_values: (a: number) => [number, number];
    readonly scenario_new: (a: number, b: number, c: number, d: number, e: bigint, f: number, g: number) => number;
    readonly solve: (a: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
