/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_gamereport_free: (a: number, b: number) => void;
export const __wbg_get_scenario_delta: (a: number) => number;
export const __wbg_get_scenario_k: (a: number) => number;
export const __wbg_get_scenario_m: (a: number) => number;
export const __wbg_get_scenario_n: (a: number) => number;
export const __wbg_get_scenario_p_max_dbm: (a: number) => number;
export const __wbg_get_scenario_s: (a: number) => number;
export const __wbg_get_scenario_seed: (a: number) => bigint;
export const __wbg_priceresponse_free: (a: number, b: number) => void;
export const __wbg_revenuecurve_free: (a: number, b: number) => void;
export const __wbg_scenario_free: (a: number, b: number) => void;
export const __wbg_set_scenario_delta: (a: number, b: number) => void;
export const __wbg_set_scenario_k: (a: number, b: number) => void;
export const __wbg_set_scenario_m: (a: number, b: number) => void;
export const __wbg_set_scenario_n: (a: number, b: number) => void;
export const __wbg_set_scenario_p_max_dbm: (a: number, b: number) => void;
export const __wbg_set_scenario_s: (a: number, b: number) => void;
export const __wbg_set_scenario_seed: (a: number, b: bigint) => void;
export const gamereport_active_modules: (a: number) => number;
export const gamereport_block_norms: (a: number) => [number, number];
export const gamereport_converged: (a: number) => number;
export const gamereport_direct_rate: (a: number) => number;
export const gamereport_price_trace: (a: number) => [number, number];
export const gamereport_r_star: (a: number) => number;
export const gamereport_sum_rate: (a: number) => number;
export const gamereport_u: (a: number) => number;
export const gamereport_v: (a: number) => number;
export const price_response: (a: number, b: number, c: number, d: number) => [number, number, number];
export const priceresponse_active: (a: number) => [number, number];
export const priceresponse_prices: (a: number) => [number, number];
export const priceresponse_sum_rate: (a: number) => [number, number];
export const priceresponse_u: (a: number) => [number, number];
export const priceresponse_v: (a: number) => [number, number];
export const revenue_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const revenuecurve_active: (a: number) => number;
export const revenuecurve_prices: (a: number) => [number, number];
export const revenuecurve_r_star: (a: number) => number;
export const revenuecurve_v_star: (a: number) => number;
export const revenuecurve_values: (a: number) => [number, number];
export const scenario_new: (a: number, b: number, c: number, d: number, e: bigint, f: number, g: number) => number;
export const solve: (a: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;
