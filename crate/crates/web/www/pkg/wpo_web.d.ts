/* tslint:disable */
/* eslint-disable */

/**
 * Runs one normality check and returns the verdict record.
 */
export function check_dilator(spec: string, property: string, max_poset: number, max_elem: number): string;

/**
 * Compares two Kruskal terms of `spec` in both directions.
 */
export function compare_terms(spec: string, s: string, t: string): string;

/**
 * Normal form of `expr` with its fundamental sequence (for limits) and the
 * order types of sequences and multisets over it.
 */
export function ordinal_report(expr: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly check_dilator: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly compare_terms: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly ordinal_report: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
