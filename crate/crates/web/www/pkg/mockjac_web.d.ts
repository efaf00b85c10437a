/* tslint:disable */
/* eslint-disable */

/**
 * Expands an eta quotient such as `1^24/2^24`, or a lambency's principal
 * modulus when `input` names one.
 */
export function expand_eta(input: string, order: bigint): string;

/**
 * Coefficients of a named Eulerian series such as `3:psi`.
 */
export function expand_eulerian(name: string, order: bigint): string;

/**
 * Fits `Ψ_{D,r}` for a lambency with a printed table.
 */
export function fit_product(lambency: string, d: bigint, r: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly expand_eta: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly expand_eulerian: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly fit_product: (a: number, b: number, c: bigint, d: bigint) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
